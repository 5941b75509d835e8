#pragma once

#include "wilsonpar/errors.hpp"
#include "wilsonpar/expand.hpp"
#include "wilsonpar/generating.hpp"
#include "wilsonpar/hypergeometric.hpp"
#include "wilsonpar/lorentz.hpp"
#include "wilsonpar/orthogonalize.hpp"
#include "wilsonpar/polynomial.hpp"
#include "wilsonpar/quadrature.hpp"
#include "wilsonpar/rational.hpp"
#include "wilsonpar/serialize.hpp"
#include "wilsonpar/spectral.hpp"
#include "wilsonpar/verify.hpp"
#include "wilsonpar/wilson.hpp"
