#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rdqm/bigfloat.hpp"
#include "rdqm/casoratian.hpp"
#include "rdqm/errors.hpp"
#include "rdqm/family.hpp"
#include "rdqm/linalg.hpp"
#include "rdqm/sturm.hpp"
#include "rdqm/twist.hpp"

namespace rdqm {

struct ConstraintCheck {
    std::string name;
    bool satisfied = false;
};

struct ParameterRangeReport {
    std::vector<ConstraintCheck> constraints;       // inequality gates
    std::vector<ConstraintCheck> xi_positivity;     // one per requested v
    bool all_ok() const {
        for (const auto& c : constraints)
            if (!c.satisfied) return false;
        for (const auto& c : xi_positivity)
            if (!c.satisfied) return false;
        return true;
    }
};

/// The q-Racah twist-(i) well-definedness gates: c = q^-N, 0 < ac < d < 1,
/// qd < b < 1, then ac < dq, b < q, d < q^2, and positivity of each requested
/// xi_v on the extended lattice [-1, N+1].
inline ParameterRangeReport validate_parameter_range(const ParamSet& ps,
                                                     const std::vector<long>& vs = {0, 1, 2}) {
    if (ps.family != Family::qR) throw InvalidInput("parameter range gates are q-Racah only");
    const Rational a = ps.lam[0], b = ps.lam[1], c = ps.lam[2], d = ps.lam[3], q = ps.q;
    ParameterRangeReport rep;
    auto add = [&rep](std::string name, bool ok) {
        rep.constraints.push_back({std::move(name), ok});
    };
    add("c = q^-N", c == q.pow(-ps.N));
    add("0 < ac", Rational(0) < a * c);
    add("ac < d", a * c < d);
    add("d < 1", d < Rational(1));
    add("qd < b", q * d < b);
    add("b < 1", b < Rational(1));
    add("ac < dq", a * c < d * q);
    add("b < q", b < q);
    add("d < q^2", d < q * q);
    for (long v : vs) {
        bool pos = true;
        std::string note = "xi_" + std::to_string(v) + " > 0 on [-1, N+1]";
        try {
            for (long x = -1; x <= ps.N + 1; ++x)
                if (!(eval_xi(ps, TwistId::I, v, x) > Rational(0))) pos = false;
        } catch (const PoleInSeries&) {
            pos = false;
            note += " (series pole)";
        }
        rep.xi_positivity.push_back({std::move(note), pos});
    }
    return rep;
}

/// Original Hamiltonian in both gauges: the real symmetric matrix (entries
/// need square roots, held as BigFloat) and the similarity-transformed
/// matrix acting exactly on rationals.
struct HamiltonianBundle {
    ParamSet params;
    SymTridiag H;  // size N+1
};

inline HamiltonianBundle build_hamiltonian(const ParamSet& ps) {
    if (!meta(ps.family).finite) throw InvalidInput("matrix form needs a finite lattice");
    const long n = ps.N + 1;
    HamiltonianBundle hb;
    hb.params = ps;
    hb.H.diag.resize(n);
    hb.H.off.resize(n - 1);
    for (long x = 0; x < n; ++x) {
        hb.H.diag[x] = BigFloat(fam_B(ps, x) + fam_D(ps, x));
        if (x + 1 < n) {
            Rational prod = fam_B(ps, x) * fam_D(ps, x + 1);
            if (prod.sign() < 0) throw InvalidParameters("B(x) D(x+1) < 0: matrix not real symmetric");
            hb.H.off[x] = BigFloat(prod).sqrt();
            hb.H.off[x] = -hb.H.off[x];
        }
    }
    return hb;
}

/// Exact action of the similarity-transformed Hamiltonian on a lattice
/// vector: (Htilde u)(x) = B(x)(u(x) - u(x+1)) + D(x)(u(x) - u(x-1)),
/// boundary terms dropping out through D(0) = 0 and B(N) = 0.
inline std::vector<Rational> apply_htilde(const ParamSet& ps, const std::vector<Rational>& u) {
    const long n = static_cast<long>(u.size());
    std::vector<Rational> r(n, Rational(0));
    for (long x = 0; x < n; ++x) {
        Rational B = fam_B(ps, x), D = fam_D(ps, x);
        Rational up = (x + 1 < n) ? u[x + 1] : Rational(0);
        Rational um = (x - 1 >= 0) ? u[x - 1] : Rational(0);
        r[x] = B * (u[x] - up) + D * (u[x] - um);
    }
    return r;
}

/// Htilde P_n = E_n P_n exactly, for all n in [0, N].
inline bool htilde_eigen_check(const ParamSet& ps) {
    const long n = ps.N + 1;
    for (long deg = 0; deg < n; ++deg) {
        std::vector<Rational> u;
        for (long x = 0; x < n; ++x) u.push_back(eval_polynomial(ps, deg, x));
        std::vector<Rational> hu = apply_htilde(ps, u);
        Rational E = eval_energy(ps, deg);
        for (long x = 0; x < n; ++x)
            if (hu[x] != E * u[x]) return false;
    }
    return true;
}

struct GroundState {
    std::vector<Rational> phi0_sq;  // exact weights
    std::vector<BigFloat> phi0;     // square roots
    bool detailed_balance = false;  // B(x) phi0^2(x) = D(x+1) phi0^2(x+1) exactly
    BigFloat residual;              // max |(H phi0)(x)|
};

inline GroundState ground_state(const ParamSet& ps) {
    const long n = ps.N + 1;
    GroundState g;
    for (long x = 0; x < n; ++x) {
        Rational w = phi0sq_product(ps, x);
        if (w.sign() <= 0) throw InvalidParameters("phi0^2 not positive on the lattice");
        g.phi0_sq.push_back(w);
        g.phi0.push_back(BigFloat(w).sqrt());
    }
    g.detailed_balance = true;
    for (long x = 0; x + 1 < n; ++x)
        if (fam_B(ps, x) * g.phi0_sq[x] != fam_D(ps, x + 1) * g.phi0_sq[x + 1])
            g.detailed_balance = false;
    HamiltonianBundle hb = build_hamiltonian(ps);
    std::vector<BigFloat> r = tridiag_apply(hb.H, g.phi0);
    g.residual = BigFloat(0);
    for (const BigFloat& v : r) g.residual = max(g.residual, v.abs());
    return g;
}

/// phi0~ / phi0 in the exact gauge: rho(x) = prod_{y<x} alpha B'(y) / B(y).
/// The alpha-absorbed potentials are the positive ones, so the product stays
/// positive for alpha of either sign; the sign decoration the symmetric gauge
/// needs cancels here.
inline Rational pseudo_gauge_ratio(const ParamSet& ps, const TwistedPotentials& tp, long x) {
    Rational r(1);
    for (long y = 0; y < x; ++y) {
        Rational B = fam_B(ps, y);
        if (B.is_zero()) throw EvaluationPole("gauge ratio: B vanished inside the lattice");
        r *= tp.alpha * tp.Bprime(y) / B;
    }
    return r;
}

struct DefectReport {
    bool interior_zero = false;       // rows 1..N-1 of (H - Etv) phi~_v vanish exactly
    bool boundary_matches = false;    // rows 0 and N reproduce the predicted coefficients
    Rational defect0;                 // measured gauge-side coefficient at x = 0
    Rational defectN;                 // measured gauge-side coefficient at x = N
};

/// (H phi~_v)(x) = Etv phi~_v(x) away from both boundaries; the check runs in
/// the exact gauge u = (phi0~/phi0) xi_v, where every quantity is rational.
inline DefectReport pseudo_virtual_vector_defect(const ParamSet& ps, TwistId id, long v) {
    TwistedPotentials tp = make_twist(ps, id);
    const long N = ps.N;
    Rational Etv = pseudo_energy(ps, id, v);
    std::vector<Rational> u;
    for (long x = 0; x <= N; ++x)
        u.push_back(pseudo_gauge_ratio(ps, tp, x) * eval_xi(ps, id, v, x));
    std::vector<Rational> hu = apply_htilde(ps, u);

    DefectReport rep;
    rep.interior_zero = true;
    for (long x = 1; x < N; ++x)
        if (hu[x] != Etv * u[x]) rep.interior_zero = false;
    rep.defect0 = hu[0] - Etv * u[0];
    rep.defectN = hu[N] - Etv * u[N];
    Rational want0 = tp.alpha * tp.Dprime(0) * eval_xi(ps, id, v, -1);
    Rational wantN = tp.alpha * tp.Bprime(N) * pseudo_gauge_ratio(ps, tp, N) * eval_xi(ps, id, v, N + 1);
    rep.boundary_matches = (rep.defect0 == want0) && (rep.defectN == wantN);
    if (!rep.interior_zero && ps.family == Family::qR)
        throw TwistTableError("interior defect for a q-Racah pseudo virtual vector");
    return rep;
}

/// One-step deformed system built from the seed xi_{d1}.
struct DeformedBundle {
    ParamSet params;
    TwistId twist = TwistId::I;
    long d1 = 0;
    Rational Etilde;
    std::function<Rational(long)> Bhat, Dhat;       // hatted potentials
    std::function<Rational(long)> Bd1, Dd1;         // standard-form potentials
    SymTridiag H;                                   // (N+2) x (N+2), rows x = -1..N
    bool compat_product = false;                    // B D(+1) = Bhat Dhat(+1) on [0,N]
    bool compat_sum = false;                        // B + D = Bhat + Dhat + Etilde on [0,N]
    bool boundary_zeroes = false;                   // Bhat(-1) = Dhat(N+1) = Bd1(N) = Dd1(-1) = 0
};

inline DeformedBundle build_deformed(const ParamSet& ps, TwistId id, long d1) {
    const long N = ps.N;
    TwistedPotentials tp = make_twist(ps, id);
    DeformedBundle b;
    b.params = ps;
    b.twist = id;
    b.d1 = d1;
    b.Etilde = pseudo_energy(ps, id, d1);

    auto xi = [ps, id, d1](long x) { return eval_xi(ps, id, d1, x); };
    for (long x = -1; x <= N + 1; ++x)
        if (xi(x).is_zero()) throw InvalidParameters("seed polynomial vanishes on [-1, N+1]");

    Rational alpha = tp.alpha;
    auto Bp = tp.Bprime, Dp = tp.Dprime;
    b.Bhat = [alpha, Bp, xi](long x) { return alpha * Bp(x) * xi(x + 1) / xi(x); };
    b.Dhat = [alpha, Dp, xi](long x) { return alpha * Dp(x) * xi(x - 1) / xi(x); };
    b.Bd1 = [alpha, Dp, xi](long x) { return alpha * Dp(x + 1) * xi(x) / xi(x + 1); };
    b.Dd1 = [alpha, Bp, xi](long x) { return alpha * Bp(x) * xi(x + 1) / xi(x); };

    b.boundary_zeroes = b.Bhat(-1).is_zero() && b.Dhat(N + 1).is_zero() &&
                        b.Bd1(N).is_zero() && b.Dd1(-1).is_zero();
    b.compat_product = true;
    b.compat_sum = true;
    for (long x = 0; x <= N; ++x) {
        if (fam_B(ps, x) * fam_D(ps, x + 1) != b.Bhat(x) * b.Dhat(x + 1)) b.compat_product = false;
        if (fam_B(ps, x) + fam_D(ps, x) != b.Bhat(x) + b.Dhat(x) + b.Etilde) b.compat_sum = false;
    }

    const long n = N + 2;  // rows x = -1 .. N
    b.H.diag.resize(n);
    b.H.off.resize(n - 1);
    for (long i = 0; i < n; ++i) {
        long x = i - 1;
        b.H.diag[i] = BigFloat(b.Bhat(x) + b.Dhat(x + 1) + b.Etilde);
        if (i + 1 < n) {
            Rational prod = b.Bhat(x + 1) * b.Dhat(x + 1);
            if (prod.sign() < 0) throw InvalidParameters("deformed off-diagonal not real");
            b.H.off[i] = -BigFloat(prod).sqrt();
        }
    }
    return b;
}

struct SpectrumReport {
    bool spectrum_ok = false;        // eigenvalues match {E_0..E_N} + {Etilde}
    bool residuals_ok = false;       // explicit eigenvectors satisfy H v = lambda v
    bool casoratian_form_ok = false; // determinant rewriting of the inherited vectors
    bool orthogonal_ok = false;      // pairwise inner products below tolerance
    bool factorized_ok = false;      // A A^T + Etilde reproduces the matrix
    bool determinant_ok = false;     // det(H - Etilde I) below tolerance
    BigFloat max_eigen_error;
    BigFloat max_residual;
};

inline SpectrumReport deformed_spectrum_check(const DeformedBundle& b, const BigFloat& tol) {
    const ParamSet& ps = b.params;
    const long N = ps.N, n = N + 2;
    SpectrumReport rep;

    // expected spectrum
    std::vector<BigFloat> want;
    for (long k = 0; k <= N; ++k) want.push_back(BigFloat(eval_energy(ps, k)));
    want.push_back(BigFloat(b.Etilde));
    std::sort(want.begin(), want.end());

    std::vector<BigFloat> ev = eigenvalues_symmetric_tridiag(b.H.diag, b.H.off);
    rep.max_eigen_error = BigFloat(0);
    for (size_t i = 0; i < want.size(); ++i) {
        BigFloat err = (ev[i] - want[i]).abs() / max(BigFloat(1), want[i].abs());
        rep.max_eigen_error = max(rep.max_eigen_error, err);
    }
    rep.spectrum_ok = rep.max_eigen_error <= tol;

    TwistedPotentials tp = make_twist(ps, b.twist);
    auto xi = [&](long x) { return eval_xi(ps, b.twist, b.d1, x); };

    // inherited eigenvectors and the added one
    std::vector<BigFloat> phi0;
    for (long x = 0; x <= N; ++x) phi0.push_back(BigFloat(phi0sq_product(ps, x)).sqrt());
    rep.max_residual = BigFloat(0);
    rep.casoratian_form_ok = true;
    for (long deg = 0; deg <= N; ++deg) {
        std::vector<BigFloat> w(n);
        for (long i = 0; i < n; ++i) {
            long x = i - 1;
            BigFloat t1(0), t2(0);
            if (x >= 0) t1 = BigFloat(b.Bhat(x)).sqrt() * phi0[x] * BigFloat(eval_polynomial(ps, deg, x));
            if (x + 1 <= N) t2 = BigFloat(b.Dhat(x + 1)).sqrt() * phi0[x + 1] * BigFloat(eval_polynomial(ps, deg, x + 1));
            w[i] = t1 - t2;
        }
        std::vector<BigFloat> hw = tridiag_apply(b.H, w);
        BigFloat E(eval_energy(ps, deg));
        for (long i = 0; i < n; ++i)
            rep.max_residual = max(rep.max_residual, (hw[i] - E * w[i]).abs());

        // Casoratian rewriting on x in [0, N-1]:
        //   w(x) = -sqrt(alpha B'(x)) phi0~(x) / sqrt(xi(x) xi(x+1)) * W[xi, nu P_deg](x)
        for (long x = 0; x < N; ++x) {
            Rational rho = pseudo_gauge_ratio(ps, tp, x);
            Rational rho1 = pseudo_gauge_ratio(ps, tp, x + 1);
            Rational wc = xi(x) * rho1.inverse() * eval_polynomial(ps, deg, x + 1) -
                          xi(x + 1) * rho.inverse() * eval_polynomial(ps, deg, x);
            BigFloat phi0t = BigFloat(rho) * phi0[x];
            BigFloat pref = -BigFloat(tp.alpha * tp.Bprime(x)).sqrt() * phi0t /
                            (BigFloat(xi(x)) * BigFloat(xi(x + 1))).sqrt();
            if ((pref * BigFloat(wc) - w[x + 1]).abs() > tol) rep.casoratian_form_ok = false;
        }
    }
    // added eigenvector
    {
        ParamSet down = shift_params(ps, -1);
        std::vector<BigFloat> w(n);
        for (long i = 0; i < n; ++i) {
            long x = i - 1;
            w[i] = BigFloat(phi0sq_product(down, x + 1)).sqrt() /
                   (BigFloat(xi(x)) * BigFloat(xi(x + 1))).sqrt();
        }
        std::vector<BigFloat> hw = tridiag_apply(b.H, w);
        BigFloat E(b.Etilde);
        for (long i = 0; i < n; ++i)
            rep.max_residual = max(rep.max_residual, (hw[i] - E * w[i]).abs());
    }
    rep.residuals_ok = rep.max_residual <= tol;

    // pairwise orthogonality of the N+2 explicit eigenvectors
    {
        std::vector<std::vector<BigFloat>> vecs;
        for (long deg = 0; deg <= N; ++deg) {
            std::vector<BigFloat> w(n);
            for (long i = 0; i < n; ++i) {
                long x = i - 1;
                BigFloat t1(0), t2(0);
                if (x >= 0) t1 = BigFloat(b.Bhat(x)).sqrt() * phi0[x] * BigFloat(eval_polynomial(ps, deg, x));
                if (x + 1 <= N) t2 = BigFloat(b.Dhat(x + 1)).sqrt() * phi0[x + 1] * BigFloat(eval_polynomial(ps, deg, x + 1));
                w[i] = t1 - t2;
            }
            vecs.push_back(std::move(w));
        }
        {
            ParamSet down = shift_params(ps, -1);
            std::vector<BigFloat> w(n);
            for (long i = 0; i < n; ++i) {
                long x = i - 1;
                w[i] = BigFloat(phi0sq_product(down, x + 1)).sqrt() /
                       (BigFloat(xi(x)) * BigFloat(xi(x + 1))).sqrt();
            }
            vecs.push_back(std::move(w));
        }
        rep.orthogonal_ok = true;
        for (size_t i = 0; i < vecs.size(); ++i) {
            BigFloat ni(0);
            for (const BigFloat& c : vecs[i]) ni += c * c;
            for (size_t j = i + 1; j < vecs.size(); ++j) {
                BigFloat nj(0), dot(0);
                for (long k = 0; k < n; ++k) {
                    dot += vecs[i][k] * vecs[j][k];
                    nj += vecs[j][k] * vecs[j][k];
                }
                if (dot.abs() > tol * (ni * nj).sqrt()) rep.orthogonal_ok = false;
            }
        }
    }

    // factorized form: entries of A A^T + Etilde, A = sqrt(Bhat) - e^d sqrt(Dhat)
    {
        rep.factorized_ok = true;
        BigFloat eps = BigFloat::pow2(-static_cast<long>(BigFloat::default_precision()) + 4);
        for (long i = 0; i < n; ++i) {
            long x = i - 1;
            BigFloat diag = BigFloat(b.Bhat(x)) + BigFloat(b.Dhat(x + 1)) + BigFloat(b.Etilde);
            BigFloat scale = max(BigFloat(1), diag.abs());
            if ((diag - b.H.diag[i]).abs() > eps * scale) rep.factorized_ok = false;
            if (i + 1 < n) {
                BigFloat off = -(BigFloat(b.Bhat(x + 1)).sqrt() * BigFloat(b.Dhat(x + 1)).sqrt());
                BigFloat oscale = max(BigFloat(1), off.abs());
                if ((off - b.H.off[i]).abs() > eps * oscale) rep.factorized_ok = false;
            }
        }
    }

    // det(H - Etilde I) vanishes within tolerance relative to the entry scale
    {
        BigFloat det = shifted_determinant(b.H, BigFloat(b.Etilde));
        BigFloat scale(1);
        for (long i = 0; i < n; ++i) {
            BigFloat rowmax = b.H.diag[i].abs();
            if (i > 0) rowmax = max(rowmax, b.H.off[i - 1].abs());
            if (i + 1 < n) rowmax = max(rowmax, b.H.off[i].abs());
            scale *= max(BigFloat(1), rowmax);
        }
        rep.determinant_ok = det.abs() <= tol * scale;
    }
    return rep;
}

/// One-step seed versus deleted-eigenstate chain: xi_l(x-1) is proportional
/// to varphi_l(x)^-1 W[P_1..P_l](x) at parameters shifted down l+1 steps.
/// Identical to the identity instance M = 1, D = {l}, calN = l.
inline ProportionalityReport eigenstate_deletion_special_case(const ParamSet& ps, long ell) {
    if (ell < 1) throw InvalidInput("deletion case needs l >= 1");
    IdentityInstance inst;
    inst.params = ps;
    inst.twist = TwistId::I;
    inst.idx = build_index_sets({ell}, ell);
    ProportionalityReport rep = verify_identity(inst);
    if (rep.status == ProportionalityStatus::Mismatch)
        throw IdentityFalsified("eigenstate deletion special case falsified");
    return rep;
}

} // namespace rdqm
