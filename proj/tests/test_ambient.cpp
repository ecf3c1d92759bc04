#include <doctest.h>

#include <cmath>

#include "crossflow/ambient.hpp"
#include "crossflow/curvature.hpp"
#include "crossflow/profiles.hpp"
#include "crossflow/rng.hpp"

using namespace crossflow;

TEST_CASE("make_space derived constants") {
  const AmbientSpace cp4 = make_space(Field::Complex, 4);
  CHECK(cp4.a == 2);
  CHECK(cp4.m == 7);
  CHECK(cp4.einstein == 10.0);
  const AmbientSpace hp4 = make_space(Field::Quaternionic, 4);
  CHECK(hp4.a == 4);
  CHECK(hp4.m == 15);
  CHECK(hp4.einstein == 24.0);
  const AmbientSpace cp2 = make_space(Field::Complex, 2);
  CHECK(cp2.m == 3);
  CHECK(cp2.einstein == 6.0);
  CHECK_THROWS_AS(make_space(Field::Complex, 1), std::invalid_argument);
}

TEST_CASE("space name parsing") {
  CHECK(parse_space("cp4").m == 7);
  CHECK(parse_space("HP3").m == 11);
  CHECK_THROWS_AS(parse_space("xp4"), std::invalid_argument);
  CHECK_THROWS_AS(parse_space("cp"), std::invalid_argument);
  CHECK_THROWS_AS(parse_space("cp4x"), std::invalid_argument);
}

TEST_CASE("structure endomorphisms") {
  for (Field f : {Field::Complex, Field::Quaternionic}) {
    const AmbientSpace sp = make_space(f, 3);
    const auto js = structure_matrices(sp);
    const int d = sp.dim();
    REQUIRE(int(js.size()) == sp.a - 1);
    for (const auto& J : js) {
      CHECK((J * J + Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() == 0.0);
      CHECK((J + J.transpose()).cwiseAbs().maxCoeff() == 0.0);
    }
    if (f == Field::Quaternionic) {
      CHECK((js[0] * js[1] - js[2]).cwiseAbs().maxCoeff() == 0.0);
      CHECK((js[1] * js[2] - js[0]).cwiseAbs().maxCoeff() == 0.0);
      CHECK((js[2] * js[0] - js[1]).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("tensor symmetries, Bianchi, Einstein contraction") {
  for (Field f : {Field::Complex, Field::Quaternionic}) {
    const AmbientSpace sp = make_space(f, f == Field::Complex ? 4 : 2);
    const CurvatureTensor t = curvature_tensor(sp);
    const int d = t.dim();
    double sym = 0.0, bianchi = 0.0;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c)
          for (int e = 0; e < d; ++e) {
            const double v = t.at(a, b, c, e);
            sym = std::max({sym, std::abs(v + t.at(b, a, c, e)),
                            std::abs(v + t.at(a, b, e, c)), std::abs(v - t.at(c, e, a, b))});
            bianchi = std::max(bianchi,
                               std::abs(v + t.at(b, c, a, e) + t.at(c, a, b, e)));
          }
    CHECK(sym <= 1e-12);
    CHECK(bianchi <= 1e-12);
    const double ric_err =
        (t.ricci() - sp.einstein * Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
    CHECK(ric_err <= 1e-12);
  }
}

TEST_CASE("sectional curvature values") {
  const AmbientSpace sp = make_space(Field::Complex, 4);
  const CurvatureTensor t = curvature_tensor(sp);
  const auto js = structure_matrices(sp);
  const int d = sp.dim();

  Eigen::VectorXd x = Eigen::VectorXd::Zero(d), y = Eigen::VectorXd::Zero(d);
  x[0] = 1.0;

  SUBCASE("J-aligned pair attains 4") {
    y = js[0] * x;
    CHECK(sectional_curvature(t, x, y) == doctest::Approx(4.0).epsilon(1e-12));
  }
  SUBCASE("J-orthogonal pair attains 1") {
    y[2] = 1.0;  // different block, orthogonal to x, Jx
    CHECK(sectional_curvature(t, x, y) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("projection norm 1/3 gives 2") {
    y[2] = 1.0;
    const Eigen::VectorXd jy = js[0] * y;
    Eigen::VectorXd z = Eigen::VectorXd::Zero(d);
    z[4] = 1.0;  // orthogonal to y-block entirely
    const Eigen::VectorXd mixed = std::sqrt(1.0 / 3.0) * jy + std::sqrt(2.0 / 3.0) * z;
    CHECK(sectional_curvature(t, mixed, y) == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("dependent input rejected") {
    CHECK_THROWS_AS(sectional_curvature(t, x, Eigen::VectorXd(2.0 * x)),
                    std::invalid_argument);
  }
  SUBCASE("scaling invariance of the normalized value") {
    y[3] = 2.0;
    y[5] = 1.0;
    const double k1 = sectional_curvature(t, x, y);
    const double k2 = sectional_curvature(t, Eigen::VectorXd(3.0 * x), y);
    CHECK(k1 == doctest::Approx(k2).epsilon(1e-12));
  }
}

TEST_CASE("random orthonormal pairs: range and the projection formula") {
  for (Field f : {Field::Complex, Field::Quaternionic}) {
    const AmbientSpace sp = make_space(f, 4);
    const CurvatureTensor t = curvature_tensor(sp);
    const auto js = structure_matrices(sp);
    const int d = sp.dim();
    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
      Eigen::VectorXd x(d), y(d);
      for (int q = 0; q < d; ++q) x[q] = rng.gaussian();
      for (int q = 0; q < d; ++q) y[q] = rng.gaussian();
      x.normalize();
      y -= y.dot(x) * x;
      y.normalize();
      const double k = sectional_curvature(t, x, y);
      CHECK(k >= 1.0 - 1e-10);
      CHECK(k <= 4.0 + 1e-10);
      double proj = 0.0;
      for (const auto& J : js) {
        const double c = (J * y).dot(x);
        proj += c * c;
      }
      CHECK(std::abs(k - (1.0 + 3.0 * proj)) <= 1e-10);
    }
  }
}

TEST_CASE("coupling: umbilic and zero h") {
  const AmbientSpace sp = make_space(Field::Complex, 4);
  const CurvatureTensor t = curvature_tensor(sp);
  FrameConfig frame = random_adapted_frame(sp, 3, gaussian_h_sampler());
  SUBCASE("umbilic h has zero tangential coupling") {
    frame.h = 1.7 * Eigen::MatrixXd::Identity(sp.m, sp.m);
    const Coupling c = curvature_coupling(t, frame);
    CHECK(std::abs(c.tangential) <= 1e-10);
  }
  SUBCASE("h = 0 gives (0, 0)") {
    frame.h.setZero();
    const Coupling c = curvature_coupling(t, frame);
    CHECK(c.tangential == 0.0);
    CHECK(c.normal == 0.0);
  }
  SUBCASE("dimension mismatch rejected") {
    const CurvatureTensor small = curvature_tensor(make_space(Field::Complex, 2));
    CHECK_THROWS_AS(curvature_coupling(small, frame), std::invalid_argument);
  }
}

// Closed-form fixtures on equivariant frames, worked out by hand from the
// profile derivatives: on the CP^4 geodesic sphere the tangential coupling
// equals m|Aring|^2 exactly, the normal coupling is H(4*l_h + 6*l_c) - rbar|A|^2,
// and Simons' identity forces |nabla A|^2 = 2(a-1)(m-a+1) cot(r) tan(r).
TEST_CASE("coupling fixtures on Hopf-adapted frames") {
  const AmbientSpace sp = make_space(Field::Complex, 4);
  const CurvatureTensor t = curvature_tensor(sp);
  const EquivariantFamily sphere = geodesic_sphere_family(sp);

  SUBCASE("sphere at pi/4") {
    const FrameConfig frame = adapted_frame(sphere, M_PI / 4.0);
    const Coupling c = curvature_coupling(t, frame);
    CHECK(c.tangential == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(c.normal == doctest::Approx(-24.0).epsilon(1e-12));
    CHECK(simons_gradient_term(t, frame) == doctest::Approx(12.0).epsilon(1e-12));
  }
  SUBCASE("sphere at pi/3") {
    const FrameConfig frame = adapted_frame(sphere, M_PI / 3.0);
    const Coupling c = curvature_coupling(t, frame);
    CHECK(c.tangential == doctest::Approx(18.0).epsilon(1e-10));
    CHECK(c.normal == doctest::Approx(-36.0).epsilon(1e-10));
    CHECK(simons_gradient_term(t, frame) == doctest::Approx(12.0).epsilon(1e-10));
  }
  SUBCASE("tube k=1 at tan(r)=2") {
    const EquivariantFamily tube = tube_family(sp, 1);
    const FrameConfig frame = adapted_frame(tube, std::atan(2.0));
    const Coupling c = curvature_coupling(t, frame);
    CHECK(c.tangential == doctest::Approx(66.5).epsilon(1e-10));
    CHECK(c.normal == doctest::Approx(-84.5).epsilon(1e-10));
    CHECK(simons_gradient_term(t, frame) == doctest::Approx(12.0).epsilon(1e-10));
  }
  SUBCASE("HP4 sphere at pi/3") {
    const AmbientSpace hp = make_space(Field::Quaternionic, 4);
    const CurvatureTensor th = curvature_tensor(hp);
    const FrameConfig frame = adapted_frame(geodesic_sphere_family(hp), M_PI / 3.0);
    const Coupling c = curvature_coupling(th, frame);
    CHECK(c.tangential == doctest::Approx(108.0).epsilon(1e-10));
    CHECK(c.normal == doctest::Approx(-216.0).epsilon(1e-10));
    CHECK(simons_gradient_term(th, frame) == doctest::Approx(72.0).epsilon(1e-10));
  }
}

// Independent route for the coupling slack: the J-structure closed form
// slack = (3/2) sum_s ||[h, phi_s]||_F^2 with phi_s the tangential part of
// J_s in the frame. The tensor contraction must agree on random frames.
TEST_CASE("coupling slack matches the commutator closed form") {
  for (Field f : {Field::Complex, Field::Quaternionic}) {
    const AmbientSpace sp = make_space(f, 3);
    const CurvatureTensor t = curvature_tensor(sp);
    const auto js = structure_matrices(sp);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const FrameConfig frame = random_adapted_frame(sp, seed, gaussian_h_sampler());
      const Coupling c = curvature_coupling(t, frame);
      const double H = frame.h.trace();
      const double A2 = (frame.h * frame.h).trace();
      const double ao2 = A2 - H * H / double(sp.m);

      double slack_formula = 0.0;
      for (const auto& J : js) {
        const Eigen::MatrixXd phi =
            frame.tangent * J.transpose() * frame.tangent.transpose();
        const Eigen::MatrixXd comm = frame.h * phi - phi * frame.h;
        slack_formula += 1.5 * comm.squaredNorm();
      }
      const double slack_tensor = c.tangential - double(sp.m) * ao2;
      CHECK(slack_tensor ==
            doctest::Approx(slack_formula).epsilon(1e-9).scale(1.0 + slack_formula));
    }
  }
}

TEST_CASE("coupling invariant under tangent-frame rotation") {
  const AmbientSpace sp = make_space(Field::Complex, 4);
  const CurvatureTensor t = curvature_tensor(sp);
  const FrameConfig base = random_adapted_frame(sp, 5, gaussian_h_sampler());
  const Coupling c0 = curvature_coupling(t, base);
  Rng rng(99);
  for (int i = 0; i < 1000; ++i) {
    const Eigen::MatrixXd q = random_orthogonal(rng, sp.m);
    FrameConfig rot = base;
    rot.tangent = q * base.tangent;
    rot.h = q * base.h * q.transpose();
    fill_hopf_angles(sp, rot);
    const Coupling c1 = curvature_coupling(t, rot);
    CHECK(std::abs(c1.tangential - c0.tangential) <=
          1e-10 * (1.0 + std::abs(c0.tangential)));
    CHECK(std::abs(c1.normal - c0.normal) <= 1e-10 * (1.0 + std::abs(c0.normal)));
  }
}

TEST_CASE("random_adapted_frame: determinism and frame quality") {
  const AmbientSpace sp = make_space(Field::Quaternionic, 4);
  const FrameConfig a = random_adapted_frame(sp, 0, gaussian_h_sampler());
  const FrameConfig b = random_adapted_frame(sp, 0, gaussian_h_sampler());
  CHECK((a.normal - b.normal).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.tangent - b.tangent).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.h - b.h).cwiseAbs().maxCoeff() == 0.0);

  // Orthonormality of {nu, e_1..e_m} and h symmetry.
  const int m = sp.m;
  Eigen::MatrixXd full(m + 1, sp.dim());
  full.row(0) = a.normal.transpose();
  full.bottomRows(m) = a.tangent;
  const Eigen::MatrixXd gram = full * full.transpose();
  CHECK((gram - Eigen::MatrixXd::Identity(m + 1, m + 1)).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((a.h - a.h.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.hopf_angles.rows() == sp.a - 1);
  CHECK(a.hopf_angles.cols() == m);
  CHECK(a.hopf_angles.maxCoeff() <= 1.0 + 1e-12);

  // Prescribed spectrum lands exactly where requested.
  Eigen::VectorXd lam(m);
  for (int i = 0; i < m; ++i) lam[i] = i - 3.0;
  const FrameConfig c = random_adapted_frame(sp, 1, prescribed_spectrum_sampler(lam));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.h, Eigen::EigenvaluesOnly);
  Eigen::VectorXd sorted = lam;
  std::sort(sorted.data(), sorted.data() + m);
  CHECK((es.eigenvalues() - sorted).cwiseAbs().maxCoeff() <= 1e-10);
}
