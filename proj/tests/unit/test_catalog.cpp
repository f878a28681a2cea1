#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "octoverify/catalog.hpp"
#include "octoverify/errors.hpp"
#include "octoverify/shape_spectra.hpp"
#include "oracles.hpp"

namespace ov = octoverify;
using ov::Coords;
using ov::Vec8;

namespace {

Coords interior_point(const ov::Chart& chart, std::mt19937_64& rng) {
  Coords u(chart.dim());
  for (int i = 0; i < chart.dim(); ++i) {
    const auto& ax = chart.axes()[static_cast<std::size_t>(i)];
    const double m = ax.periodic ? 0.0 : 0.1;
    u[i] = std::uniform_real_distribution<double>(ax.lo + m, ax.hi - m)(rng);
  }
  return u;
}

std::size_t error_position(const std::string& text) {
  try {
    ov::parse_spec(text);
  } catch (const ov::SpecError& e) {
    return e.position();
  }
  ADD_FAILURE() << "no SpecError for " << text;
  return 0;
}

// <H, nu> at a sample point of S^p(cos t) x S^q(sin t).
double mean_curvature_along_normal(int p, int q, double t) {
  std::ostringstream spec;
  spec.precision(17);
  spec << "product:" << p << ',' << q << '@' << std::cos(t) << ',' << std::sin(t);
  const ov::SubmanifoldModel m = ov::build_chart(ov::parse_spec(spec.str()));
  Coords u(m.chart.dim());
  for (int i = 0; i < u.size(); ++i) u[i] = 0.9 + 0.1 * i;
  return ov::mean_curvature_vector(m.chart, u).dot(m.hints.fields[0](m.chart.position(u)));
}

}  // namespace

TEST(Spec, RoundTrip) {
  for (const std::string text : {"great:6", "great:1", "product:3,3", "product:1,1,3", "product:1,1,1,1",
                                 "product:2,4@0.6,0.8", "compose:great:3/product:1,1",
                                 "compose:great:7/product:3,3"}) {
    const ov::ManifoldSpec s = ov::parse_spec(text);
    EXPECT_EQ(ov::format_spec(s), text);
    EXPECT_EQ(ov::format_spec(ov::parse_spec(ov::format_spec(s))), ov::format_spec(s));
  }
}

TEST(Spec, ExplicitRadiiNearUnitAreRescaled) {
  const ov::ManifoldSpec s = ov::parse_spec("product:1,1,3@0.447,0.447,0.775");
  const auto& p = std::get<ov::ProductSphereSpec>(s);
  double sum = 0.0;
  for (const auto& f : p.factors) sum += f.r * f.r;
  EXPECT_NEAR(sum, 1.0, 1e-14);
  EXPECT_FALSE(p.minimal());
  const std::string once = ov::format_spec(s);
  EXPECT_EQ(ov::format_spec(ov::parse_spec(once)), once);
}

TEST(Spec, DimensionsAndCodimensions) {
  EXPECT_EQ(ov::spec_dim(ov::parse_spec("great:6")), 6);
  EXPECT_EQ(ov::spec_codim(ov::parse_spec("great:6")), 1);
  EXPECT_EQ(ov::spec_codim(ov::parse_spec("product:3,3")), 1);
  EXPECT_EQ(ov::spec_codim(ov::parse_spec("product:1,1,3")), 2);
  EXPECT_EQ(ov::spec_codim(ov::parse_spec("product:1,1,1,1")), 3);
  EXPECT_EQ(ov::spec_dim(ov::parse_spec("compose:great:3/product:1,1")), 2);
  EXPECT_EQ(ov::spec_codim(ov::parse_spec("compose:great:3/product:1,1")), 5);
}

TEST(Spec, ErrorsCarryPositions) {
  EXPECT_EQ(error_position("sphere:3"), 0u);
  EXPECT_EQ(error_position("great:x"), 6u);
  EXPECT_EQ(error_position("great:9"), 6u);
  EXPECT_EQ(error_position("great:6 "), 7u);
  EXPECT_EQ(error_position("product:4,4"), 8u);
  EXPECT_EQ(error_position("product:1,1,1,1,1"), 8u);
  EXPECT_EQ(error_position("product:1,1,1,2"), 8u);
  EXPECT_EQ(error_position("product:3,3@0.5"), 12u);
  EXPECT_EQ(error_position("product:3,3@0.5,0.5"), 12u);
  EXPECT_EQ(error_position("compose:great:3/product:1,2"), 24u);
  EXPECT_EQ(error_position("compose:great:3product:1,1"), 15u);
  EXPECT_THROW(ov::parse_spec("product:0,6"), ov::SpecError);
  EXPECT_THROW(ov::parse_spec("product:6"), ov::SpecError);
}

TEST(MinimalRadii, ClosedForms) {
  const std::vector<int> a{3, 3}, b{1, 1, 3}, c{6};
  const auto ra = ov::minimal_radii(a);
  EXPECT_NEAR(ra[0], std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(ra[1], std::sqrt(0.5), 1e-15);
  const auto rb = ov::minimal_radii(b);
  EXPECT_NEAR(rb[0] * rb[0], 0.2, 1e-15);
  EXPECT_NEAR(rb[1] * rb[1], 0.2, 1e-15);
  EXPECT_NEAR(rb[2] * rb[2], 0.6, 1e-15);
  EXPECT_EQ(ov::minimal_radii(c), std::vector<double>{1.0});
  const std::vector<int> bad{4, 4}, empty{}, zero{0, 6};
  EXPECT_THROW(ov::minimal_radii(bad), ov::SpecError);
  EXPECT_THROW(ov::minimal_radii(empty), ov::SpecError);
  EXPECT_THROW(ov::minimal_radii(zero), ov::SpecError);
}

TEST(MinimalRadii, MatchRootOfNumericalMeanCurvature) {
  for (auto [p, q] : {std::pair{3, 3}, std::pair{1, 5}, std::pair{2, 4}, std::pair{5, 1}}) {
    double lo = 0.1, hi = 1.45;
    const double flo = mean_curvature_along_normal(p, q, lo);
    ASSERT_LT(flo * mean_curvature_along_normal(p, q, hi), 0.0);
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      ((mean_curvature_along_normal(p, q, mid) > 0) == (flo > 0) ? lo : hi) = mid;
    }
    const double t = 0.5 * (lo + hi);
    const std::vector<int> dims{p, q};
    const auto r = ov::minimal_radii(dims);
    EXPECT_NEAR(r[0], std::cos(t), 1e-9) << p << "," << q;
    EXPECT_NEAR(r[1], std::sin(t), 1e-9) << p << "," << q;
    EXPECT_NEAR(t, oracle::critical_angle(p, q), 1e-9);
  }
}

TEST(BuildChart, GreatSixSphere) {
  const ov::SubmanifoldModel m = ov::build_chart(ov::parse_spec("great:6"));
  EXPECT_EQ(m.dim, 6);
  EXPECT_EQ(m.codim, 1);
  ASSERT_EQ(m.hints.size(), 1u);
  EXPECT_EQ(m.hints.fields[0](Vec8::Unit(0)), Vec8::Unit(7));
  EXPECT_TRUE(m.minimal);
  EXPECT_TRUE(m.hints.all_parallel());
}

TEST(BuildChart, CliffordHint) {
  const ov::SubmanifoldModel m = ov::build_chart(ov::parse_spec("product:3,3"));
  ASSERT_EQ(m.hints.size(), 1u);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    const Vec8 x = m.chart.position(interior_point(m.chart, rng));
    Vec8 nu = x;
    nu.tail<4>() *= -1.0;
    EXPECT_LT((m.hints.fields[0](x) - nu).norm(), 1e-14);
  }
}

TEST(BuildChart, CompositionHints) {
  const ov::SubmanifoldModel m = ov::build_chart(ov::parse_spec("compose:great:3/product:1,1"));
  EXPECT_EQ(m.dim, 2);
  EXPECT_EQ(m.codim, 5);
  ASSERT_EQ(m.hints.size(), 5u);
  EXPECT_EQ(m.hypersurface_normal, 0);
  EXPECT_EQ(m.hypersurface_sphere_dim, 3);
  for (int j = 1; j < 5; ++j) {
    EXPECT_EQ(m.hints.fields[static_cast<std::size_t>(j)].label, "e" + std::to_string(j + 4));
    EXPECT_EQ(m.hints.fields[static_cast<std::size_t>(j)](Vec8::Unit(0)), Vec8::Unit(j + 3));
  }
}

TEST(BuildChart, CustomSpecsAreNotShipped) {
  EXPECT_THROW(ov::build_chart(ov::CustomSpec{"cartan"}), ov::SpecError);
}

TEST(Catalog, Contents) {
  const auto list = ov::catalog_list();
  auto find = [&](const std::string& name) -> const ov::CatalogEntry* {
    for (const auto& e : list) {
      if (e.name == name) return &e;
    }
    return nullptr;
  };
  for (int m = 2; m <= 6; ++m) EXPECT_NE(find("great:" + std::to_string(m)), nullptr) << m;
  for (const char* n : {"product:3,3", "product:1,5", "product:2,4", "product:1,1,3", "product:1,2,2", "product:1,1,1,1"}) {
    EXPECT_NE(find(n), nullptr) << n;
  }
  for (int m = 3; m <= 6; ++m) {
    bool any = false;
    for (const auto& e : list) any |= e.name.rfind("compose:great:" + std::to_string(m) + "/", 0) == 0;
    EXPECT_TRUE(any) << m;
  }
  EXPECT_EQ(find("product:1,1,1,1,1"), nullptr);
  EXPECT_EQ(find("product:1,1,1,2"), nullptr);
  const auto* c = find("product:3,3");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->dim, 6);
  EXPECT_EQ(c->codim, 1);
  const auto* g = find("great:6");
  ASSERT_NE(g, nullptr);
  EXPECT_EQ(g->codim, 1);
  for (const auto& e : list) EXPECT_TRUE(e.minimal) << e.name;
}

TEST(Catalog, HintInvariantsAndMinimalityOnEveryEntry) {
  std::mt19937_64 rng(7);
  for (const auto& e : ov::catalog_list()) {
    const ov::SubmanifoldModel m = ov::build_chart(e.spec);
    EXPECT_EQ(static_cast<int>(m.hints.size()), m.codim) << e.name;
    for (int t = 0; t < 8; ++t) {
      const Coords u = interior_point(m.chart, rng);
      const ov::Jet jet = m.chart.jet(u, 1);
      for (const auto& h : m.hints.fields) {
        const Vec8 n = h(jet.x);
        EXPECT_NEAR(n.norm(), 1.0, 1e-12) << e.name << " " << h.label;
        EXPECT_LT(std::abs(n.dot(jet.x)), 1e-12) << e.name;
        EXPECT_LT((jet.d1.transpose() * n).cwiseAbs().maxCoeff(), 1e-12) << e.name;
      }
      const ov::FrameField f = ov::frames_at(m.chart, u, m.hints.fields);
      EXPECT_LT(ov::mean_curvature_vector(m.chart, u).norm(), 1e-8) << e.name;
      for (std::size_t h = 0; h < m.hints.size(); ++h) {
        EXPECT_LT(ov::normal_connection_defect(m.chart, f, m.hints.fields[h]), 1e-8) << e.name;
      }
    }
  }
}

TEST(Catalog, NonMinimalRadiiHaveMeanCurvature) {
  const ov::SubmanifoldModel m = ov::build_chart(ov::parse_spec("product:2,4@0.6,0.8"));
  EXPECT_FALSE(m.minimal);
  Coords u(m.chart.dim());
  u.setConstant(1.0);
  EXPECT_GT(ov::mean_curvature_vector(m.chart, u).norm(), 0.1);
}
