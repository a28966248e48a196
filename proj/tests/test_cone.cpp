#include <algorithm>
#include <random>
#include <set>

#include "cone_oracle.hpp"
#include "doctest.h"
#include "fanoforge/cone.hpp"
#include "fanoforge/errors.hpp"
#include "fanoforge/linalg.hpp"
#include "test_helpers.hpp"

using namespace fanoforge;
using testutil::C;
using testutil::V;
using testutil::Vs;

namespace {

std::vector<RationalVector> face_rays(const Face& f) {
  auto r = f.rays();
  std::sort(r.begin(), r.end(), lex_less);
  return r;
}

std::set<std::vector<RationalVector>> face_set(const Cone& c) {
  std::set<std::vector<RationalVector>> out;
  for (const auto& f : faces(c)) out.insert(face_rays(f));
  return out;
}

// Random pointed cone: last coordinate strictly positive keeps it pointed;
// zeroing a random set of other coordinates produces lower-dimensional cones.
std::vector<RationalVector> random_pointed(std::mt19937_64& rng, size_t n, size_t r) {
  std::uniform_int_distribution<int> coin(0, 3);
  std::vector<bool> dead(n, false);
  for (size_t i = 0; i + 1 < n; ++i) dead[i] = coin(rng) == 0;
  std::vector<RationalVector> g;
  for (size_t k = 0; k < r; ++k) {
    auto v = oracle::random_vector(rng, n, -3, 3);
    for (size_t i = 0; i + 1 < n; ++i)
      if (dead[i]) v[i] = 0;
    v[n - 1] = std::uniform_int_distribution<int>(1, 3)(rng);
    g.push_back(v);
  }
  return g;
}

}  // namespace

TEST_SUITE("canonicalize") {
  TEST_CASE("interior generator is dropped") {
    Cone c = C({{2, 0}, {0, 4}, {1, 1}});
    CHECK(c.rays() == Vs({{0, 1}, {1, 0}}));
    CHECK(c.ambient_dim() == 2);
    CHECK(c.is_pointed());
  }

  TEST_CASE("single ray") {
    Cone c = C({{1, 0, 0}});
    CHECK(c.rays() == Vs({{1, 0, 0}}));
    CHECK(c.dim() == 1);
  }

  TEST_CASE("redundant rays in the upper half plane") {
    auto gens = Vs({{1, 0}, {1, 1}, {0, 1}, {-1, 1}});
    Cone c = Cone::canonicalize(gens);
    CHECK(c.rays() == Vs({{-1, 1}, {1, 0}}));
    CHECK(c.rays() == oracle::extreme_rays(gens));
  }

  TEST_CASE("input errors") {
    CHECK_THROWS_AS(Cone::canonicalize(Vs({{1, 0}, {1, 0, 0}})), InputError);
    CHECK_THROWS_AS(Cone::canonicalize(Vs({{1, 0}, {0, 0}})), InputError);
    CHECK_THROWS_AS(Cone::canonicalize({}), InputError);
    CHECK(Cone::canonicalize({}, 3).is_zero());
  }

  TEST_CASE("non-pointed cones keep a lineality basis") {
    Cone c = C({{1, 0}, {-1, 0}, {0, 1}});
    CHECK_FALSE(c.is_pointed());
    CHECK(c.lineality() == Vs({{1, 0}}));
    CHECK(c.rays() == Vs({{0, 1}}));
    CHECK(c.dim() == 2);
    CHECK(C({{1, 0}, {0, 1}, {-1, -1}}) == Cone::whole_space(2));
  }

  TEST_CASE("containment") {
    Cone q = C({{1, 0}, {0, 1}});
    CHECK(q.contains(V({3, 5})));
    CHECK_FALSE(q.contains(V({-1, 5})));
    CHECK(q.contains(C({{1, 1}, {1, 2}})));
    CHECK_FALSE(q.contains(C({{1, 1}, {-1, 2}})));
    CHECK(q.ray_index(V({0, 7})) == 0u);
    CHECK_FALSE(q.ray_index(V({1, 1})).has_value());
  }
}

TEST_SUITE("dual") {
  TEST_CASE("orthant is self-dual") {
    Cone o = C({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(dual(o) == o);
  }

  TEST_CASE("dual of the whole plane is zero") {
    Cone d = dual(C({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}));
    CHECK(d.is_zero());
    CHECK(d.ambient_dim() == 2);
  }

  TEST_CASE("two-ray cone") {
    Cone d = dual(C({{1, 0}, {1, 2}}));
    CHECK(d.rays() == Vs({{0, 1}, {2, -1}}));
    // Independent check: each dual ray is nonnegative on both generators
    // and tight on exactly one.
    for (const auto& a : d.rays()) {
      CHECK(dot(a, V({1, 0})) >= 0);
      CHECK(dot(a, V({1, 2})) >= 0);
      CHECK((dot(a, V({1, 0})) == 0) != (dot(a, V({1, 2})) == 0));
    }
    CHECK(d.rays() == oracle::facet_normals(Vs({{1, 0}, {1, 2}}), 2));
  }

  TEST_CASE("dual of a lower-dimensional cone has lineality") {
    Cone ray = C({{0, 0, 1}});
    Cone d = dual(ray);
    CHECK(d.lineality().size() == 2);
    CHECK(d.rays() == Vs({{0, 0, 1}}));
    CHECK(dual(d) == ray);
  }

  TEST_CASE("intersection") {
    Cone a = C({{1, 0}, {0, 1}});
    Cone b = C({{1, 1}, {-1, 1}});
    CHECK(intersect(a, b) == C({{1, 1}, {0, 1}}));
    CHECK(intersect(a, C({{-1, 0}, {0, -1}})).is_zero());
  }
}

TEST_SUITE("extremal rays") {
  TEST_CASE("simplicial cone on a basis of Q^4") {
    auto basis = Vs({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
    auto r = extremal_rays(Cone::canonicalize(basis));
    std::sort(basis.begin(), basis.end(), lex_less);
    CHECK(r == basis);
  }

  TEST_CASE("square cone") {
    auto sq = Vs({{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}});
    auto r = extremal_rays(Cone::canonicalize(sq));
    CHECK(r.size() == 4);
    CHECK(r == oracle::extreme_rays(sq));
    // Each ray lies on exactly two facets.
    Cone c = Cone::canonicalize(sq);
    for (const auto& v : r) {
      int tight = 0;
      for (const auto& f : c.facets()) tight += dot(f, v) == 0;
      CHECK(tight == 2);
    }
  }

  TEST_CASE("lineality is rejected") {
    CHECK_THROWS_WITH_AS(extremal_rays(C({{1, 0}, {-1, 0}, {0, 1}})),
                         "no extremal rays in lineality", PreconditionError);
  }
}

TEST_SUITE("faces") {
  const Cone orthant3 = C({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  const Cone square = C({{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}});

  TEST_CASE("is_face basics") {
    CHECK(is_face(Cone::zero(2), C({{1, 0}, {0, 1}})));
    CHECK_FALSE(is_face(C({{1, 1}}), C({{1, 0}, {0, 1}})));
    CHECK(is_face(C({{1, 0, 0}, {0, 1, 0}}), orthant3));
    CHECK_THROWS_AS(is_face(C({{-1, 0}}), C({{1, 0}, {0, 1}})), PreconditionError);
  }

  TEST_CASE("witness supports exactly the face") {
    auto t = face_test(C({{1, 0, 0}, {0, 1, 0}}), orthant3);
    REQUIRE(t.is_face);
    for (const auto& r : orthant3.rays()) {
      bool in_face = r[2] == 0;
      CHECK(t.witness(r) >= 0);
      CHECK((t.witness(r) == 0) == in_face);
    }
  }

  TEST_CASE("face counts") {
    CHECK(faces(orthant3).size() == 8);
    CHECK(faces(C({{1, 2, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {3, 0, 0, 1}})).size() == 16);
    CHECK(faces(square, 2).size() == 4);
    CHECK(faces(square, 1).size() == 4);
    CHECK(faces(square).size() == 10);
    CHECK(faces(C({{2, -1}})).size() == 2);
    CHECK_THROWS_AS(faces(square, 4), PreconditionError);
  }

  TEST_CASE("faces are ordered by dimension then indices") {
    auto fs = faces(square);
    for (size_t i = 1; i < fs.size(); ++i) {
      CHECK(fs[i - 1].dim <= fs[i].dim);
      if (fs[i - 1].dim == fs[i].dim) CHECK(fs[i - 1].ray_indices < fs[i].ray_indices);
    }
    CHECK(fs.front().ray_indices.empty());
    CHECK(fs.back().ray_indices.size() == 4);
  }

  TEST_CASE("make_face rejects non-faces") {
    // (0,1,1) and (0,-1,1) are opposite corners of the square.
    auto a = square.ray_index(V({0, 1, 1}));
    auto b = square.ray_index(V({0, -1, 1}));
    REQUIRE(a);
    REQUIRE(b);
    CHECK_THROWS_AS(make_face(square, {*a, *b}), PreconditionError);
  }

  TEST_CASE("minimal face containing") {
    Face f1 = minimal_face_containing(orthant3, Vs({{1, 0, 0}}));
    CHECK(face_rays(f1) == Vs({{1, 0, 0}}));
    Face f2 = minimal_face_containing(orthant3, Vs({{1, 1, 0}}));
    CHECK(face_rays(f2) == Vs({{0, 1, 0}, {1, 0, 0}}));
    Face f3 = minimal_face_containing(square, Vs({{1, 1, 2}}));
    CHECK(f3.dim == 2);
    CHECK(face_rays(f3) == Vs({{0, 1, 1}, {1, 0, 1}}));
    CHECK(minimal_face_containing(square, Vs({{0, 0, 1}})).dim == 3);
    CHECK(minimal_face_containing(square, {}).dim == 0);
    CHECK_THROWS_AS(minimal_face_containing(square, Vs({{2, 0, 1}})), PreconditionError);
  }
}

TEST_SUITE("cone lemma") {
  const Cone orthant3 = C({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});

  Face ray_face(const Cone& c, const RationalVector& v) { return make_face(c, {*c.ray_index(v)}); }

  TEST_CASE("valid extension") {
    Face tau = ray_face(orthant3, V({1, 0, 0}));
    Face eta = ray_face(orthant3, V({0, 1, 0}));
    Face out = cone_lemma_extend(orthant3, tau, LinearFunctional{V({-1, 0, 1})}, eta);
    CHECK(face_rays(out) == Vs({{0, 1, 0}, {1, 0, 0}}));
    CHECK(is_face(out, orthant3));
  }

  TEST_CASE("eta outside ker alpha") {
    Face tau = ray_face(orthant3, V({1, 0, 0}));
    Face eta = ray_face(orthant3, V({0, 1, 0}));
    try {
      cone_lemma_extend(orthant3, tau, LinearFunctional{V({-1, 1, 1})}, eta);
      FAIL("expected HypothesisError");
    } catch (const HypothesisError& e) {
      REQUIRE(e.violations().size() == 1);
      CHECK(e.violations()[0].find("ker") != std::string::npos);
    }
  }

  TEST_CASE("every violated hypothesis is reported") {
    Face tau = make_face(orthant3, {0, 1});  // not a ray
    Face eta = ray_face(orthant3, V({0, 0, 1}));
    try {
      cone_lemma_extend(orthant3, tau, LinearFunctional{V({1, -1, 1})}, eta);
      FAIL("expected HypothesisError");
    } catch (const HypothesisError& e) {
      CHECK(e.violations().size() == 2);
    }
  }
}

TEST_SUITE("json") {
  TEST_CASE("round trip") {
    Cone c = C({{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}});
    auto j = cone_to_json(c);
    CHECK(j["dim"] == 3);
    CHECK(j["rays"].size() == 3);
    CHECK(cone_from_json(j) == c);
    Cone nonpointed = C({{1, 0}, {-1, 0}, {0, 1}});
    CHECK(cone_from_json(cone_to_json(nonpointed)) == nonpointed);
  }

  TEST_CASE("rationals") {
    CHECK(rational_from_json(nlohmann::json("3/6")) == Rational(1, 2));
    CHECK(rational_from_json(nlohmann::json(-4)) == -4);
    CHECK_THROWS_AS(rational_from_json(nlohmann::json("x")), InputError);
    CHECK_THROWS_AS(cone_from_json(nlohmann::json::parse(R"({"dim": 2, "rays": [[1,0,0]]})")),
                    InputError);
  }
}

TEST_SUITE("properties") {
  TEST_CASE("random pointed cones agree with brute force") {
    std::mt19937_64 rng(20240611);
    int checked = 0;
    for (int trial = 0; trial < 520; ++trial) {
      size_t n = std::uniform_int_distribution<size_t>(2, 5)(rng);
      size_t r = std::uniform_int_distribution<size_t>(1, 8)(rng);
      auto gens = random_pointed(rng, n, r);
      Cone c = Cone::canonicalize(gens);
      CAPTURE(to_string(gens.front()));
      REQUIRE(c.is_pointed());
      CHECK(c.rays() == oracle::extreme_rays(gens));
      for (const auto& g : gens) CHECK(c.contains(g));
      CHECK(dual(dual(c)) == c);
      CHECK(Cone::canonicalize(extremal_rays(c), n) == c);
      CHECK(c.facets() == oracle::facet_normals(c.rays(), n));
      CHECK(c.dim() == linalg::rank(c.rays(), n));

      auto expected = oracle::faces(c.rays(), n);
      CHECK(face_set(c) == expected);
      for (const auto& f : faces(c)) {
        auto t = face_test(f.as_cone(), c);
        CHECK(t.is_face);
        for (size_t i = 0; i < c.rays().size(); ++i) {
          bool in = std::binary_search(f.ray_indices.begin(), f.ray_indices.end(), i);
          CHECK(t.witness(c.rays()[i]) >= 0);
          CHECK((t.witness(c.rays()[i]) == 0) == in);
        }
      }
      // Random ray subsets that are not faces must be rejected.
      const size_t nr = c.rays().size();
      for (unsigned mask = 1; mask < (1u << nr); mask += 3) {
        std::vector<RationalVector> sub;
        for (size_t i = 0; i < nr; ++i)
          if (mask & (1u << i)) sub.push_back(c.rays()[i]);
        bool want = expected.count(sub) > 0;
        CHECK(is_face(Cone::canonicalize(sub, n), c) == want);
      }
      ++checked;
    }
    CHECK(checked >= 500);
  }

  TEST_CASE("random cones with lineality") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 150; ++trial) {
      size_t n = std::uniform_int_distribution<size_t>(2, 4)(rng);
      size_t r = std::uniform_int_distribution<size_t>(1, 7)(rng);
      std::vector<RationalVector> gens;
      while (gens.size() < r) {
        auto v = oracle::random_vector(rng, n, -2, 2);
        if (!is_zero(v)) gens.push_back(v);
      }
      Cone c = Cone::canonicalize(gens);
      CHECK(dual(dual(c)) == c);
      CHECK(Cone::canonicalize(c.generators(), n) == c);
      for (int k = 0; k < 6; ++k) {
        auto x = oracle::random_vector(rng, n, -3, 3);
        CHECK(c.contains(x) == oracle::in_cone(x, gens));
      }
      for (const auto& l : c.lineality()) {
        CHECK(oracle::in_cone(l, gens));
        CHECK(oracle::in_cone(scale(l, -1), gens));
      }
    }
  }

  TEST_CASE("lemma extension on random simplicial cones in Q^5") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> tgt(0, 3);
    int valid = 0;
    while (valid < 200) {
      std::vector<RationalVector> basis;
      for (int i = 0; i < 5; ++i) basis.push_back(oracle::random_vector(rng, 5, -3, 3));
      if (linalg::det(basis) == 0) continue;
      Cone c = Cone::canonicalize(basis);
      REQUIRE(c.rays().size() == 5);
      size_t t = std::uniform_int_distribution<size_t>(0, 4)(rng);
      // α with prescribed values on the rays: negative on τ, >= 0 elsewhere.
      RationalVector target(5);
      std::vector<size_t> eta_idx;
      for (size_t i = 0; i < 5; ++i) {
        if (i == t) {
          target[i] = -(1 + tgt(rng));
        } else {
          int v = tgt(rng);
          target[i] = v <= 1 ? 0 : v;
          if (target[i] == 0 && tgt(rng) % 2 == 0) eta_idx.push_back(i);
        }
      }
      auto alpha = linalg::solve(c.rays(), target);
      REQUIRE(alpha);
      Face out = cone_lemma_extend(c, make_face(c, {t}), LinearFunctional{*alpha},
                                   make_face(c, eta_idx));
      std::vector<RationalVector> want{c.rays()[t]};
      for (auto i : eta_idx) want.push_back(c.rays()[i]);
      std::sort(want.begin(), want.end(), lex_less);
      CHECK(face_rays(out) == want);
      CHECK(oracle::faces(c.rays(), 5).count(want) == 1);
      ++valid;
    }
  }

  TEST_CASE("lemma extension on random cones with at most 8 rays") {
    std::mt19937_64 rng(11);
    int valid = 0, attempts = 0;
    while (valid < 200 && attempts < 5000) {
      ++attempts;
      size_t n = std::uniform_int_distribution<size_t>(2, 5)(rng);
      size_t r = std::uniform_int_distribution<size_t>(2, 8)(rng);
      Cone c = Cone::canonicalize(random_pointed(rng, n, r));
      const auto& rays = c.rays();
      if (rays.size() < 2) continue;
      size_t t = std::uniform_int_distribution<size_t>(0, rays.size() - 1)(rng);
      // τ is extremal, so a facet of cone(other rays) separates it.
      std::vector<RationalVector> others;
      for (size_t i = 0; i < rays.size(); ++i)
        if (i != t) others.push_back(rays[i]);
      Cone rest = Cone::canonicalize(others, n);
      std::vector<RationalVector> seps;
      for (const auto& g : dual(rest).generators())
        if (dot(g, rays[t]) < 0) seps.push_back(g);
      REQUIRE_FALSE(seps.empty());
      RationalVector alpha = seps[std::uniform_int_distribution<size_t>(0, seps.size() - 1)(rng)];

      auto all_faces = oracle::faces(rays, n);
      std::vector<std::vector<RationalVector>> in_ker;
      for (const auto& f : all_faces)
        if (std::all_of(f.begin(), f.end(), [&](const auto& v) { return dot(alpha, v) == 0; }))
          in_ker.push_back(f);
      const auto& eta_rays = in_ker[std::uniform_int_distribution<size_t>(0, in_ker.size() - 1)(rng)];
      std::vector<size_t> eta_idx;
      for (const auto& v : eta_rays) eta_idx.push_back(*c.ray_index(v));
      std::sort(eta_idx.begin(), eta_idx.end());

      Face out = cone_lemma_extend(c, make_face(c, {t}), LinearFunctional{alpha},
                                   make_face(c, eta_idx));
      auto got = face_rays(out);
      CHECK(all_faces.count(got) == 1);
      CHECK(std::find(got.begin(), got.end(), rays[t]) != got.end());
      CHECK(got.size() == eta_rays.size() + 1);
      ++valid;
    }
    CHECK(valid >= 200);
  }
}
