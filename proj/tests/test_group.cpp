#include <catch2/catch_amalgamated.hpp>

#include "carnot/group.hpp"
#include "carnot/path.hpp"

using namespace carnot;

namespace {

GroupPoint pt(double x, double y, double t)
{
    Eigen::VectorXd z(2), tc(1);
    z << x, y;
    tc << t;
    return {z, tc};
}

GroupPoint random_point(const GroupSpec& g, Rng& rng, double scale = 2.0)
{
    std::uniform_real_distribution<double> u(-scale, scale);
    GroupPoint p(Eigen::VectorXd(g.horiz_dim()), Eigen::VectorXd(g.nc));
    for (int i = 0; i < g.horiz_dim(); ++i) p.z[i] = u(rng);
    for (int i = 0; i < g.nc; ++i) p.t[i] = u(rng);
    return p;
}

double point_dist(const GroupPoint& a, const GroupPoint& b)
{
    return std::sqrt((a.z - b.z).squaredNorm() + (a.t - b.t).squaredNorm());
}

}  // namespace

TEST_CASE("make_group validates the Heisenberg data and computes Q")
{
    const GroupSpec g = heisenberg1();
    CHECK(g.ell == 1);
    CHECK(g.nc == 1);
    CHECK(g.Q == 4);
}

TEST_CASE("make_group rejects degenerate and non-skew data")
{
    Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(2, 2);
    CHECK_THROWS_AS(make_group(1, 1, {Z}), ValidationError);
    CHECK_THROWS_WITH(make_group(1, 1, {Z}),
                      Catch::Matchers::ContainsSubstring("dependent or degenerate"));

    Eigen::MatrixXd S(2, 2);
    S << 0, 1, 1, 0;
    CHECK_THROWS_WITH(make_group(1, 1, {S}),
                      Catch::Matchers::ContainsSubstring("skew"));
}

TEST_CASE("block-diagonal ell=2 instance passes the H-type checks")
{
    // Direct matrix arithmetic oracle: J2 = diag(J,J) is skew and orthogonal,
    // and with a single center matrix the anticommutation set is empty.
    Eigen::MatrixXd J2 = Eigen::MatrixXd::Zero(4, 4);
    J2(0, 1) = 1;
    J2(1, 0) = -1;
    J2(2, 3) = 1;
    J2(3, 2) = -1;
    REQUIRE(((J2 + J2.transpose()).cwiseAbs().maxCoeff()) == 0.0);
    REQUIRE(((J2.transpose() * J2 - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff()) == 0.0);
    const GroupSpec g = make_group(2, 1, {J2}, true);
    CHECK(g.Q == 6);
}

TEST_CASE("quaternionic instance satisfies anticommutation; breaking it is reported")
{
    CHECK(quaternionic1().Q == 10);

    // Replace the third matrix with diag(J,-J): skew, orthogonal, independent,
    // but commuting with U[0]; H-type must fail with the pair named.
    GroupSpec q = quaternionic1();
    std::vector<Eigen::MatrixXd> U = q.U;
    Eigen::MatrixXd JmJ = Eigen::MatrixXd::Zero(4, 4);
    JmJ(0, 1) = 1;
    JmJ(1, 0) = -1;
    JmJ(2, 3) = -1;
    JmJ(3, 2) = 1;
    U[2] = JmJ;
    CHECK_THROWS_WITH(make_group(2, 3, U, true),
                      Catch::Matchers::ContainsSubstring("anticommute"));
}

TEST_CASE("group law on H^1 matches hand evaluation")
{
    const GroupSpec g = heisenberg1();
    const GroupPoint e = group_identity(g);

    CHECK(point_dist(group_mul(g, e, e), e) == 0.0);

    // (1,0,0) o (0,1,0) = (1,1,1/2): the half-area term (1/2)<(1,0),U(0,1)>.
    const GroupPoint a = group_mul(g, pt(1, 0, 0), pt(0, 1, 0));
    CHECK(point_dist(a, pt(1, 1, 0.5)) < 1e-15);

    // Reversed order flips the central sign: non-commutativity.
    const GroupPoint b = group_mul(g, pt(0, 1, 0), pt(1, 0, 0));
    CHECK(point_dist(b, pt(1, 1, -0.5)) < 1e-15);
}

TEST_CASE("inverse and identity axioms")
{
    const GroupSpec g = heisenberg1();
    const GroupPoint e = group_identity(g);
    CHECK(point_dist(group_inv(g, e), e) == 0.0);
    CHECK(point_dist(group_inv(g, pt(1, 1, 0.5)), pt(-1, -1, -0.5)) == 0.0);

    Rng rng(2024);
    for (int i = 0; i < 200; ++i) {
        const GroupPoint p = random_point(g, rng);
        CHECK(point_dist(group_mul(g, p, group_inv(g, p)), e) <= 1e-14);
    }
}

TEST_CASE("associativity on seeded random triples")
{
    for (const GroupSpec& g : {heisenberg1(), quaternionic1()}) {
        Rng rng(7);
        for (int i = 0; i < 1000; ++i) {
            const GroupPoint p = random_point(g, rng);
            const GroupPoint q = random_point(g, rng);
            const GroupPoint r = random_point(g, rng);
            const GroupPoint lhs = group_mul(g, group_mul(g, p, q), r);
            const GroupPoint rhs = group_mul(g, p, group_mul(g, q, r));
            REQUIRE(point_dist(lhs, rhs) <= 1e-12);
        }
    }
}

TEST_CASE("dilations are automorphisms and act as (dz, d^2 t)")
{
    const GroupSpec g = heisenberg1();
    CHECK(point_dist(dilate(g, 1.0, pt(0.3, -0.7, 0.1)), pt(0.3, -0.7, 0.1)) == 0.0);
    CHECK(point_dist(dilate(g, 2.0, pt(1, 1, 1)), pt(2, 2, 4)) == 0.0);
    CHECK_THROWS_AS(dilate(g, 0.0, pt(1, 1, 1)), ValidationError);

    Rng rng(99);
    std::uniform_real_distribution<double> du(0.3, 3.0);
    for (int i = 0; i < 200; ++i) {
        const double d = du(rng);
        const GroupPoint p = random_point(g, rng);
        const GroupPoint q = random_point(g, rng);
        const GroupPoint lhs = dilate(g, d, group_mul(g, p, q));
        const GroupPoint rhs = group_mul(g, dilate(g, d, p), dilate(g, d, q));
        REQUIRE(point_dist(lhs, rhs) <= 1e-12);
    }
}

TEST_CASE("gauge norm values and homogeneity")
{
    const GroupSpec g = heisenberg1();
    CHECK(gauge_norm(g, group_identity(g)) == 0.0);
    CHECK(gauge_norm(g, pt(1, 0, 0)) == 1.0);
    // (16 |t|^2)^(1/4) at t=1 is 2 by the chosen gauge constant.
    CHECK(gauge_norm(g, pt(0, 0, 1)) == Catch::Approx(2.0).epsilon(1e-14));

    Rng rng(5);
    std::uniform_real_distribution<double> du(0.3, 3.0);
    for (int i = 0; i < 200; ++i) {
        const GroupPoint p = random_point(g, rng);
        const double d = du(rng);
        REQUIRE(gauge_norm(g, dilate(g, d, p))
                == Catch::Approx(d * gauge_norm(g, p)).epsilon(1e-12));
        REQUIRE(gauge_norm(g, group_inv(g, p))
                == Catch::Approx(gauge_norm(g, p)).epsilon(1e-12));
    }
}

TEST_CASE("gauge ball volume matches the closed form on H^1")
{
    // vol{|z|^4 + 16 t^2 <= 1} = pi^2/8 by the radial Beta integral.
    CHECK(gauge_ball_volume(heisenberg1()) == Catch::Approx(pi * pi / 8.0).epsilon(1e-12));
}
