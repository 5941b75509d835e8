#include "oracle.hpp"
#include "wilsonpar/lorentz.hpp"

#include <gtest/gtest.h>

using namespace wilsonpar;

namespace {

struct RepCase {
  int j1, j2;  // twice the spins; j1 < 0 selects the four-vector
};

const std::vector<RepCase> kReps{{-1, -1}, {1, 1}, {1, 0}, {2, 0}, {2, 1}, {2, 2}, {3, 1}};

LorentzRep library_rep(const RepCase& c) {
  return c.j1 < 0 ? build_vector_rep() : build_spin_rep(Spin::from_twice(c.j1), Spin::from_twice(c.j2));
}

oracle::Rep oracle_rep(const RepCase& c) { return c.j1 < 0 ? oracle::vector_rep() : oracle::spinor_rep(c.j1, c.j2); }

}  // namespace

TEST(Spin, Parsing) {
  EXPECT_EQ(Spin::parse("1/2").twice(), 1u);
  EXPECT_EQ(Spin::parse("3/2").twice(), 3u);
  EXPECT_EQ(Spin::parse("1").twice(), 2u);
  EXPECT_EQ(Spin::parse("1.5").twice(), 3u);
  EXPECT_EQ(Spin::parse("2/1").twice(), 4u);
  EXPECT_EQ(Spin::from_twice(3).str(), "3/2");
  EXPECT_EQ(Spin::from_twice(4).str(), "2");
  for (const char* bad : {"-1", "1/3", "0.3", "abc", "1/x", ""}) EXPECT_THROW(Spin::parse(bad), InvalidSpin) << bad;
}

TEST(Lorentz, DimensionsAndLabels) {
  EXPECT_EQ(build_vector_rep().dim, 4);
  EXPECT_TRUE(build_vector_rep().metric);
  const auto r = build_spin_rep(Spin::from_twice(2), Spin::from_twice(0));
  EXPECT_EQ(r.dim, 6);
  EXPECT_EQ(r.label, "(1,0)+(0,1)");
  EXPECT_EQ(build_spin_rep(Spin::from_twice(1), Spin::from_twice(1)).dim, 4);
}

TEST(Lorentz, OracleRepresentationsSatisfyTheAlgebra) {
  for (const auto& c : kReps) {
    const auto a = oracle::audit(oracle_rep(c));
    for (double v : {a.commutators, a.triple, a.brackets, a.b_invariant, a.b_parity, a.m_pseudo, a.commuting, a.parity})
      EXPECT_LE(v, 1e-12) << c.j1 << "," << c.j2;
  }
}

TEST(Lorentz, LibraryAuditIsClean) {
  for (const auto& c : kReps) {
    const auto audit = algebra_audit(library_rep(c));
    EXPECT_GT(audit.size(), 40u);
    for (const auto& e : audit) EXPECT_LE(e.residual, 1e-12) << e.id << " " << c.j1 << "," << c.j2;
  }
}

TEST(Lorentz, AuditDetectsBrokenParity) {
  auto r = build_vector_rep();
  r.parity = Matrix::Identity(4, 4);
  double worst = 0.0;
  for (const auto& e : algebra_audit(r))
    if (e.group == "parity") worst = std::max(worst, e.residual);
  EXPECT_GT(worst, 1.0);
}

TEST(Lorentz, CasimirsAreScalars) {
  for (const auto& c : kReps) {
    const double j1 = c.j1 < 0 ? 0.5 : c.j1 / 2.0, j2 = c.j1 < 0 ? 0.5 : c.j2 / 2.0;
    const auto d = derived_operators(library_rep(c));
    const auto b = scalar_part(d.B);
    const auto m = scalar_part(d.M);
    EXPECT_LE(b.deviation, 1e-12);
    EXPECT_LE(m.deviation, 1e-12);
    EXPECT_NEAR(b.value.real(), 2.0 * (j1 * (j1 + 1) + j2 * (j2 + 1)), 1e-12);
    const double split = j1 * (j1 + 1) - j2 * (j2 + 1);
    EXPECT_NEAR(m.value.real(), -split * split, 1e-12);
  }
}

TEST(Lorentz, N0ExtractionMatchesOracle) {
  for (const auto& c : kReps) {
    const auto lib = n0_extraction(library_rep(c));
    const auto orc = oracle::n0(oracle_rep(c));
    EXPECT_NEAR(lib.literal_residual, orc.literal, 1e-12);
    EXPECT_LE(lib.covariant_residual, 1e-12);
    EXPECT_LE(orc.covariant, 1e-12);
    EXPECT_LE(lib.n2_trace, 1e-12);
    EXPECT_NEAR(lib.n2_asymmetry, orc.n2_asym, 1e-12);
    // the Euclidean contraction disagrees wherever W P is nonzero
    EXPECT_GT(lib.literal_residual, 1.0);
  }
}
