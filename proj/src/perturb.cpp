#include "boreforge/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace boreforge {

PlanarField lienard_field(const PhysParams& params) {
    const double mu = params.mu, a = params.a, g = params.g, A = params.A;
    auto F = [=](double x) { return (a / (mu * A)) * (1.0 - std::exp(x) - (A / 4.0) * std::exp(-x)); };
    auto G = [=](double x) { return (1.0 / (4.0 * mu)) * (A * std::exp(-x) - (g / A) * std::exp(2.0 * x)); };
    auto dF = [=](double x) { return (a / (mu * A)) * (-std::exp(x) + (A / 4.0) * std::exp(-x)); };
    auto dG = [=](double x) { return -(1.0 / (4.0 * mu)) * (A * std::exp(-x) + 2.0 * (g / A) * std::exp(2.0 * x)); };
    PlanarField f;
    f.value = [=](const Vec2& x) -> Vec2 { return {x.y, F(x.x) - x.y * G(x.x)}; };
    f.jacobian = [=](const Vec2& x) -> Mat2 {
        return {0.0, 1.0, dF(x.x) - x.y * dG(x.x), -G(x.x)};
    };
    return f;
}

HyperbolicData hyperbolic_data(const PlanarField& field, const Vec2& x_h) {
    HyperbolicData d;
    d.x_h = x_h;
    d.M = field.jacobian(x_h);
    const double tr = d.M.trace(), det = d.M.det();
    const double disc = tr * tr - 4.0 * det;
    if (!(disc > 0.0) || !(det < 0.0))
        throw std::domain_error("hyperbolic_data: point is not a hyperbolic saddle");
    const double r = std::sqrt(disc);
    d.lambda_u = (tr + r) / 2.0;
    d.lambda_s = (tr - r) / 2.0;

    // spectral projections via the resolvent identity:
    // Pi_u = (M - lambda_s I)/(lambda_u - lambda_s), Pi_s = I - Pi_u
    const double gap = d.lambda_u - d.lambda_s;
    d.proj_u = (d.M - Mat2::identity() * d.lambda_s) * (1.0 / gap);
    d.proj_s = Mat2::identity() - d.proj_u;

    // projection algebra must hold to near machine precision
    const double alg = std::max({(d.proj_u * d.proj_u - d.proj_u).fnorm(),
                                 (d.proj_s * d.proj_s - d.proj_s).fnorm(),
                                 (d.proj_s * d.proj_u).fnorm()});
    if (alg > 1e-12)
        throw std::runtime_error("hyperbolic_data: projection algebra failure");

    // semigroup constants measured, not assumed
    d.alpha = std::min(-d.lambda_s, d.lambda_u);
    d.K = 1.0;
    for (double t = 0.0; t <= 20.0; t += 0.25) {
        const Mat2 e = expm(d.M * t);
        d.K = std::max(d.K, (e * d.proj_s).fnorm() * std::exp(-d.lambda_s * t) /
                                std::max(d.proj_s.fnorm(), 1e-300));
        d.K = std::max(d.K, (e * d.proj_u).fnorm() * std::exp(-d.lambda_u * t) /
                                std::max(d.proj_u.fnorm(), 1e-300));
    }
    return d;
}

namespace {

// Geometric grid on [0, L] clustered at 0.
std::vector<double> geometric_offsets(double L, std::size_t n, double growth) {
    std::vector<double> s(n + 1);
    const double denom = std::expm1(growth);
    for (std::size_t i = 0; i <= n; ++i)
        s[i] = L * std::expm1(growth * static_cast<double>(i) / static_cast<double>(n)) / denom;
    return s;
}

struct IterationStats {
    double ratio = 0.0;
    std::size_t iters = 0;
};

} // namespace

BranchTrajectory hyperbolic_fixed_point(const HyperbolicData& data, const PlanarField& field,
                                        const PerturbationFn& psi1, double lambda, double T,
                                        const Vec2& x_u, const FixedPointOpts& opts) {
    if (x_u.norm() > opts.seed_ball)
        throw std::domain_error("hyperbolic_fixed_point: x_u outside the admissible ball");

    const double L = opts.window_per_alpha / data.alpha;
    const std::size_t n = opts.nodes;
    const std::vector<double> off = geometric_offsets(L, n, opts.grid_growth);

    // ascending times tau_0 = T - L ... tau_n = T
    std::vector<double> tau(n + 1);
    for (std::size_t i = 0; i <= n; ++i) tau[i] = T - off[n - i];

    std::vector<Vec2> X(n + 1, Vec2{0, 0}), f(n + 1);
    auto forcing = [&](std::size_t i, const Vec2& Xi) -> Vec2 {
        const Vec2 xi = data.x_h + Xi;
        return field.value(xi) - data.M * Xi + psi1(lambda, tau[i], xi);
    };

    double prev_diff = -1.0;
    IterationStats stats;
    for (std::size_t it = 0; it < opts.max_iter; ++it) {
        for (std::size_t i = 0; i <= n; ++i) f[i] = forcing(i, X[i]);

        // I_s(t) = int_{-inf}^t e^{lam_s (t-s)} Pi_s f ds, tail beyond the
        // window truncated (kernel ~ e^{-window_per_alpha})
        std::vector<Vec2> Is(n + 1), Iu(n + 1);
        Is[0] = data.proj_s * f[0] * (1.0 / -data.lambda_s); // stationary tail estimate
        for (std::size_t i = 1; i <= n; ++i) {
            const double h = tau[i] - tau[i - 1];
            const double e = std::exp(data.lambda_s * h);
            Is[i] = Is[i - 1] * e + (h / 2.0) * (e * (data.proj_s * f[i - 1]) + data.proj_s * f[i]);
        }
        Iu[n] = {0, 0};
        for (std::size_t i = n; i-- > 0;) {
            const double h = tau[i + 1] - tau[i];
            const double e = std::exp(-data.lambda_u * h);
            Iu[i] = Iu[i + 1] * e + (h / 2.0) * (data.proj_u * f[i] + e * (data.proj_u * f[i + 1]));
        }

        double diff = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            const Vec2 xn = std::exp(data.lambda_u * (tau[i] - T)) * (data.proj_u * x_u)
                          - Iu[i] + Is[i];
            diff = std::max(diff, (xn - X[i]).norm());
            X[i] = xn;
        }
        stats.iters = it + 1;
        if (prev_diff > 0.0 && diff > 0.0) {
            stats.ratio = std::max(stats.ratio, diff / prev_diff);
            if (diff / prev_diff >= opts.contraction_limit && it > 2)
                throw std::runtime_error(
                    "hyperbolic_fixed_point: outside contraction regime");
        }
        prev_diff = diff;
        if (diff < opts.tol) break;
    }

    BranchTrajectory out;
    out.t = std::move(tau);
    out.value = std::move(X);
    out.contraction_ratio = stats.ratio;
    out.iterations = stats.iters;
    return out;
}

BranchTrajectory attractor_fixed_point(const PlanarField& field, const Mat2& M_a,
                                       const Vec2& x_a,
                                       const std::function<Vec2(double)>& base,
                                       const PerturbationFn& psi1, double lambda, double T,
                                       const Vec2& y_init, const FixedPointOpts& opts) {
    if (y_init.norm() > opts.seed_ball)
        throw std::domain_error("attractor_fixed_point: y_init outside the admissible ball");

    // decay rate of the attractor block
    const double tr = M_a.trace(), det = M_a.det();
    const double disc = tr * tr - 4.0 * det;
    const double rate = disc >= 0.0 ? -(tr + std::sqrt(disc)) / 2.0 : -tr / 2.0;
    if (!(rate > 0.0))
        throw std::domain_error("attractor_fixed_point: M_a is not asymptotically stable");

    const double L = opts.window_per_alpha / rate;
    if ((base(T + L) - x_a).norm() > 1e-2)
        throw std::domain_error(
            "attractor_fixed_point: base solution does not settle onto the attractor");
    const std::size_t n = opts.nodes;
    const std::vector<double> off = geometric_offsets(L, n, opts.grid_growth);
    std::vector<double> tau(n + 1);
    for (std::size_t i = 0; i <= n; ++i) tau[i] = T + off[i];

    std::vector<Vec2> Xb(n + 1);
    std::vector<Mat2> C(n + 1), E(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        Xb[i] = base(tau[i]);
        C[i] = field.jacobian(Xb[i]) - M_a;
        if (i > 0) E[i] = expm(M_a * (tau[i] - tau[i - 1]));
    }

    std::vector<Vec2> Y(n + 1, Vec2{0, 0}), R(n + 1), rhs(n + 1), Yn(n + 1);
    auto remainder = [&](std::size_t i, const Vec2& Yi) -> Vec2 {
        const Vec2 xi = Xb[i] + Yi;
        return field.value(xi) - field.value(Xb[i]) - field.jacobian(Xb[i]) * Yi
             + psi1(lambda, tau[i], xi);
    };

    double prev_diff = -1.0;
    IterationStats stats;
    for (std::size_t it = 0; it < opts.max_iter; ++it) {
        for (std::size_t i = 0; i <= n; ++i) R[i] = remainder(i, Y[i]);

        // rhs = e^{(t-T)M_a} y_init + int_T^t e^{(t-s)M_a} R(s) ds
        rhs[0] = y_init;
        for (std::size_t i = 1; i <= n; ++i) {
            const double h = tau[i] - tau[i - 1];
            rhs[i] = E[i] * rhs[i - 1] + (h / 2.0) * (E[i] * R[i - 1] + R[i]);
        }

        // (I - P) Ynew = rhs, P(Y)(t) = int_T^t e^{(t-s)M_a} C(s) Y(s) ds:
        // causal kernel, solved by forward substitution with an implicit
        // right endpoint per step.
        Yn[0] = rhs[0];
        Vec2 J{0, 0}; // running integral int_T^{tau_i} e^{(tau_i - s)M_a} C Y ds
        for (std::size_t i = 1; i <= n; ++i) {
            const double h = tau[i] - tau[i - 1];
            const Vec2 lhs_known = rhs[i] + E[i] * J + (h / 2.0) * (E[i] * (C[i - 1] * Yn[i - 1]));
            const Mat2 Ai = Mat2::identity() - C[i] * (h / 2.0);
            const double dt2 = Ai.det();
            if (std::fabs(dt2) < 1e-300)
                throw std::runtime_error("attractor_fixed_point: singular step system");
            const Mat2 inv{Ai.d / dt2, -Ai.b / dt2, -Ai.c / dt2, Ai.a / dt2};
            Yn[i] = inv * lhs_known;
            J = E[i] * J + (h / 2.0) * (E[i] * (C[i - 1] * Yn[i - 1]) + C[i] * Yn[i]);
        }

        double diff = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            diff = std::max(diff, (Yn[i] - Y[i]).norm());
            Y[i] = Yn[i];
        }
        stats.iters = it + 1;
        if (prev_diff > 0.0 && diff > 0.0) {
            stats.ratio = std::max(stats.ratio, diff / prev_diff);
            if (diff / prev_diff >= opts.contraction_limit && it > 2)
                throw std::runtime_error("attractor_fixed_point: outside contraction regime");
        }
        prev_diff = diff;
        if (diff < opts.tol) break;
    }

    BranchTrajectory out;
    out.t = std::move(tau);
    out.value = std::move(Y);
    out.contraction_ratio = stats.ratio;
    out.iterations = stats.iters;
    return out;
}

double PerturbedOrbit::sup_norm() const {
    double s = 0.0;
    for (const Vec2& v : correction) s = std::max(s, v.norm());
    return s;
}

namespace {

// Base orbit in the "computation frame": ebbing orbits as stored; surging
// orbits time-reversed so the connection always runs hyperbolic -> attractor.
// Tails beyond the stored samples extrapolate along the linearization: the
// hyperbolic end decays scalar-wise on its eigendirection (a full matrix
// exponential would amplify the vanishing complementary component), the
// sink/source end decays with the matrix exponential.
struct ComputationFrame {
    const OrbitSolution* orbit = nullptr;
    bool reversed = false;
    Vec2 x_h, x_a;          // computation-frame equilibria
    Mat2 M_a;               // computation-field Jacobian at x_a
    PlanarField field;      // reversed field when reversed

    // direct-field data for tail extrapolation in original time
    Mat2 M_plus_direct;     // Jacobian at (rho_+, 0)
    double lam_u_direct = 0.0, lam_s_direct = 0.0;
    Mat2 proj_u_direct, proj_s_direct;

    Vec2 state_original(double tq) const {
        if (tq >= orbit->t_begin() && tq <= orbit->t_end())
            return {orbit->rho_at(tq), orbit->rho_prime_at(tq)};
        if (tq < orbit->t_begin()) {
            Vec2 dev{orbit->rho.front() - orbit->rho_limit_neg, orbit->rho_prime.front()};
            const double d = tq - orbit->t_begin(); // < 0
            dev = reversed ? expm(M_plus_direct * d) * dev
                           : std::exp(lam_u_direct * d) * (proj_u_direct * dev);
            return {orbit->rho_limit_neg + dev.x, dev.y};
        }
        Vec2 dev{orbit->rho.back() - orbit->rho_limit_pos, orbit->rho_prime.back()};
        const double d = tq - orbit->t_end(); // > 0
        dev = reversed ? std::exp(lam_s_direct * d) * (proj_s_direct * dev)
                       : expm(M_plus_direct * d) * dev;
        return {orbit->rho_limit_pos + dev.x, dev.y};
    }

    // computation-frame base: plain time reversal conjugates onto -Phi
    Vec2 base(double t) const { return state_original(reversed ? -t : t); }
};

} // namespace

PerturbedBoreResult perturbed_bore(const OrbitSolution& orbit, const PerturbationFn& psi1,
                                   const std::vector<double>& lambda_set,
                                   const FixedPointOpts& opts) {
    const bool reversed = orbit.chirality < 0;
    const PhysParams& p = orbit.params;
    const PlanarField direct = lienard_field(p);

    ComputationFrame fr;
    fr.orbit = &orbit;
    fr.reversed = reversed;
    const Equilibria eq = equilibria(p.A);
    fr.x_h = {eq.rho_minus, 0.0};
    fr.x_a = {eq.rho_plus, 0.0};
    if (reversed) {
        fr.field.value = [direct](const Vec2& x) { return -direct.value(x); };
        fr.field.jacobian = [direct](const Vec2& x) { return direct.jacobian(x) * -1.0; };
    } else {
        fr.field = direct;
    }
    fr.M_a = fr.field.jacobian(fr.x_a);
    fr.M_plus_direct = direct.jacobian(fr.x_a);
    {
        const HyperbolicData hd_direct = hyperbolic_data(direct, fr.x_h);
        fr.lam_u_direct = hd_direct.lambda_u;
        fr.lam_s_direct = hd_direct.lambda_s;
        fr.proj_u_direct = hd_direct.proj_u;
        fr.proj_s_direct = hd_direct.proj_s;
    }

    const HyperbolicData hd = hyperbolic_data(fr.field, fr.x_h);

    // perturbation in the computation frame: Z(t) = X(-t) turns
    // X' = Phi(X) + Psi1(lam,t,X) into Z' = -Phi(Z) - Psi1(lam,-t,Z)
    auto psi1_frame = [&](double lam, double t, const Vec2& x) -> Vec2 {
        if (!reversed) return psi1(lam, t, x);
        return -1.0 * psi1(lam, -t, x);
    };

    // switch time: base orbit within switch_distance of x_h for all t <= T
    double T = 0.0;
    {
        const std::size_t n = orbit.t.size();
        bool set = false;
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t idx = reversed ? n - 1 - k : k;
            const double tc = reversed ? -orbit.t[idx] : orbit.t[idx];
            if ((fr.base(tc) - fr.x_h).norm() > opts.switch_distance) break;
            T = tc;
            set = true;
        }
        if (!set)
            throw std::runtime_error("perturbed_bore: no admissible switch time");
    }

    PerturbedBoreResult result;
    result.hyperbolic = hd;
    const Vec2 xbar_u = hd.proj_u * (fr.base(T) - fr.x_h);

    for (double lam : lambda_set) {
        const BranchTrajectory left = hyperbolic_fixed_point(
            hd, fr.field, psi1_frame, lam, T, xbar_u, opts);
        // B^-(lambda)(t) = x_h + X(t) - base(t)
        std::vector<Vec2> corr_left(left.t.size());
        for (std::size_t i = 0; i < left.t.size(); ++i)
            corr_left[i] = fr.x_h + left.value[i] - fr.base(left.t[i]);

        const Vec2 y_init = corr_left.back();
        auto base_fn = [&](double t) { return fr.base(t); };
        const BranchTrajectory right = attractor_fixed_point(
            fr.field, fr.M_a, fr.x_a, base_fn, psi1_frame, lam, T, y_init, opts);

        PerturbedOrbit po;
        po.lambda = lam;
        po.switch_time = reversed ? -T : T;
        po.glue_mismatch = (corr_left.back() - right.value.front()).norm();
        if (po.glue_mismatch > 1e-6)
            throw std::runtime_error("perturbed_bore: branch gluing mismatch "
                                     + std::to_string(po.glue_mismatch));
        po.contraction_ratio = std::max(left.contraction_ratio, right.contraction_ratio);
        po.iterations = left.iterations + right.iterations;

        // merge (skip duplicate switch node), still in computation frame
        po.t.reserve(left.t.size() + right.t.size());
        po.correction.reserve(po.t.capacity());
        for (std::size_t i = 0; i < left.t.size(); ++i) {
            po.t.push_back(left.t[i]);
            po.correction.push_back(corr_left[i]);
        }
        for (std::size_t i = 1; i < right.t.size(); ++i) {
            po.t.push_back(right.t[i]);
            po.correction.push_back(right.value[i]);
        }
        if (reversed) {
            std::reverse(po.t.begin(), po.t.end());
            std::reverse(po.correction.begin(), po.correction.end());
            for (auto& tv : po.t) tv = -tv;
        }
        po.base.resize(po.t.size());
        for (std::size_t i = 0; i < po.t.size(); ++i)
            po.base[i] = fr.state_original(po.t[i]);
        result.orbits.push_back(std::move(po));
    }

    // empirical Lipschitz ratio over pairs; all orbits share one grid
    for (std::size_t i = 0; i < result.orbits.size(); ++i) {
        for (std::size_t j = i + 1; j < result.orbits.size(); ++j) {
            const auto& A = result.orbits[i];
            const auto& B = result.orbits[j];
            const double dl = std::fabs(A.lambda - B.lambda);
            if (dl == 0.0) continue;
            double sup = 0.0;
            for (std::size_t k = 0; k < A.correction.size(); ++k)
                sup = std::max(sup, (A.correction[k] - B.correction[k]).norm());
            result.lipschitz_ratio = std::max(result.lipschitz_ratio, sup / dl);
        }
    }
    return result;
}

PerturbationFn gaussian_bump(double t0, double width) {
    return [t0, width](double lam, double t, const Vec2&) -> Vec2 {
        const double z = (t - t0) / width;
        return {0.0, lam * std::exp(-z * z)};
    };
}

} // namespace boreforge
