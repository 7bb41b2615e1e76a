#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "casimir/cavity.hpp"
#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/materials.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

// ---------------------------------------------------------------------------
// contour paths
// ---------------------------------------------------------------------------

struct LineSegment {
    Complex a, b;
};

/// Directed circular arc, z(t) = center + radius e^{i theta(t)}, theta: theta0 -> theta1.
struct CircularArc {
    Complex center;
    double radius;
    double theta0, theta1;
};

using PathPiece = std::variant<LineSegment, CircularArc>;

namespace detail {

inline Complex piece_point(const PathPiece& p, double t) {
    if (const auto* seg = std::get_if<LineSegment>(&p)) return seg->a + (seg->b - seg->a) * t;
    const auto& arc = std::get<CircularArc>(p);
    const double th = arc.theta0 + (arc.theta1 - arc.theta0) * t;
    return arc.center + arc.radius * Complex(std::cos(th), std::sin(th));
}

inline Complex piece_velocity(const PathPiece& p, double t) {
    if (const auto* seg = std::get_if<LineSegment>(&p)) return seg->b - seg->a;
    const auto& arc = std::get<CircularArc>(p);
    const double span = arc.theta1 - arc.theta0;
    const double th = arc.theta0 + span * t;
    return arc.radius * span * Complex(-std::sin(th), std::cos(th));
}

inline Complex piece_start(const PathPiece& p) { return piece_point(p, 0.0); }
inline Complex piece_end(const PathPiece& p) { return piece_point(p, 1.0); }

}  // namespace detail

/// Piecewise path in the complex frequency plane. Closed paths are oriented
/// counterclockwise by construction of the factories.
class ContourPath {
  public:
    enum class Orientation { CounterClockwise };

    explicit ContourPath(std::vector<PathPiece> pieces,
                         Orientation orient = Orientation::CounterClockwise)
        : pieces_(std::move(pieces)), orientation_(orient) {
        if (pieces_.empty()) throw invalid_configuration("ContourPath: empty piece list");
        scale_ = 0.0;
        for (const auto& p : pieces_) {
            scale_ = std::max(scale_, std::abs(detail::piece_end(p) - detail::piece_start(p)));
            if (const auto* arc = std::get_if<CircularArc>(&p))
                scale_ = std::max(scale_, arc->radius);
        }
    }

    static ContourPath circle(Complex center, double radius) {
        if (!(radius > 0.0)) throw invalid_configuration("ContourPath::circle: radius must be > 0");
        std::vector<PathPiece> ps;
        for (int q = 0; q < 4; ++q)
            ps.push_back(CircularArc{center, radius, 0.5 * pi * q, 0.5 * pi * (q + 1)});
        return ContourPath(std::move(ps));
    }

    /// Axis-aligned rectangle from corner lo (min Re, min Im) to hi, counterclockwise.
    static ContourPath rectangle(Complex lo, Complex hi) {
        if (!(hi.real() > lo.real()) || !(hi.imag() > lo.imag()))
            throw invalid_configuration("ContourPath::rectangle: degenerate corners");
        const Complex a{lo.real(), lo.imag()}, b{hi.real(), lo.imag()};
        const Complex c{hi.real(), hi.imag()}, d{lo.real(), hi.imag()};
        return ContourPath({LineSegment{a, b}, LineSegment{b, c}, LineSegment{c, d},
                            LineSegment{d, a}});
    }

    const std::vector<PathPiece>& pieces() const { return pieces_; }
    double scale() const { return scale_; }

    bool is_closed(double tol_rel = 1e-12) const {
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            const Complex e = detail::piece_end(pieces_[i]);
            const Complex s = detail::piece_start(pieces_[(i + 1) % pieces_.size()]);
            if (std::abs(e - s) > tol_rel * std::max(scale_, 1.0)) return false;
        }
        return true;
    }

    /// Sampled minimum distance of the path to a point (exclusion-zone checks).
    double distance_to(Complex pt, int samples_per_piece = 64) const {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : pieces_)
            for (int i = 0; i <= samples_per_piece; ++i)
                best = std::min(best,
                                std::abs(detail::piece_point(p, double(i) / samples_per_piece) - pt));
        return best;
    }

    /// Path with every point scaled about a center by factor (1 + f).
    ContourPath inflated(Complex center, double f) const {
        std::vector<PathPiece> out;
        for (const auto& p : pieces_) {
            if (const auto* seg = std::get_if<LineSegment>(&p)) {
                out.push_back(LineSegment{center + (seg->a - center) * (1.0 + f),
                                          center + (seg->b - center) * (1.0 + f)});
            } else {
                const auto& arc = std::get<CircularArc>(p);
                out.push_back(CircularArc{center + (arc.center - center) * (1.0 + f),
                                          arc.radius * (1.0 + f), arc.theta0, arc.theta1});
            }
        }
        return ContourPath(std::move(out), orientation_);
    }

  private:
    std::vector<PathPiece> pieces_;
    Orientation orientation_;
    double scale_;
};

// ---------------------------------------------------------------------------
// contour quadrature, winding numbers, residues
// ---------------------------------------------------------------------------

/// Adaptive quadrature of fn along a path, piece by piece.
inline QuadratureResult<Complex> contour_integral(const std::function<Complex(Complex)>& fn,
                                                  const ContourPath& path, double tol = 1e-9) {
    QuadratureResult<Complex> total;
    for (const auto& p : path.pieces()) {
        auto integrand = [&](double t) {
            return fn(detail::piece_point(p, t)) * detail::piece_velocity(p, t);
        };
        QuadratureResult<Complex> r;
        try {
            r = integrate_adaptive(integrand, 0.0, 1.0, tol, 0.0, 6000);
        } catch (const quadrature_failure& qf) {
            throw quadrature_failure("contour_integral: piece did not converge", qf.worst_a,
                                     qf.worst_b, qf.error_estimate);
        }
        total.value += r.value;
        total.error += r.error;
        total.evaluations += r.evaluations;
    }
    return total;
}

/// Raw argument-principle count (1/2 pi i) oint fn'/fn dz, before integer snapping.
/// The derivative is a Richardson central difference with step scaled to the path.
inline Complex winding_number_raw(const std::function<Complex(Complex)>& fn,
                                  const ContourPath& path, double tol = 1e-6) {
    double zmax = 0.0;
    for (const auto& p : path.pieces())
        zmax = std::max({zmax, std::abs(detail::piece_start(p)), std::abs(detail::piece_end(p))});
    const double h = std::max(1e-5 * path.scale(), 1e-10 * (zmax + path.scale()));
    auto logderiv = [&](Complex z) {
        const Complex d = derivative(fn, z, h);
        const Complex v = fn(z);
        if (v == Complex(0.0, 0.0))
            throw ill_conditioned_contour("winding_number: fn vanishes on the path");
        return d / v;
    };
    const auto r = contour_integral(logderiv, path, tol);
    return r.value / Complex(0.0, 2.0 * pi);
}

/// Integer winding number N = Z - P. Throws ill_conditioned_contour when the raw
/// value is not within 10*tol of an integer.
inline int winding_number(const std::function<Complex(Complex)>& fn, const ContourPath& path,
                          double tol = 1e-6) {
    const Complex raw = winding_number_raw(fn, path, tol);
    const double n = std::round(raw.real());
    if (std::abs(raw.real() - n) >= 10.0 * tol || std::abs(raw.imag()) >= 10.0 * tol)
        throw ill_conditioned_contour("winding_number: raw value not near an integer",
                                      raw.real());
    return static_cast<int>(n);
}

/// Residue of fn at z0 from a full circle of the given radius:
/// (1/2 pi i) oint fn dz. Pre: fn analytic on the circle, z0 the only enclosed singularity.
inline Complex residue_at(const std::function<Complex(Complex)>& fn, Complex z0, double radius,
                          double tol = 1e-10) {
    const auto r = contour_integral(fn, ContourPath::circle(z0, radius), tol);
    return r.value / Complex(0.0, 2.0 * pi);
}

/// Residue of a simple pole sitting on the real axis, from an indented semicircle in
/// the upper half-plane (arc integral -> i pi Res as radius -> 0), with one Richardson
/// halving to cancel the O(radius) contribution of the regular part.
inline Complex real_axis_residue(const std::function<Complex(Complex)>& fn, double w0,
                                 double radius, double tol = 1e-10) {
    auto arc_residue = [&](double rad) {
        std::vector<PathPiece> ps{CircularArc{Complex(w0, 0.0), rad, 0.0, 0.5 * pi},
                                  CircularArc{Complex(w0, 0.0), rad, 0.5 * pi, pi}};
        const auto r = contour_integral(fn, ContourPath(std::move(ps)), tol);
        return r.value / Complex(0.0, pi);
    };
    const Complex r1 = arc_residue(radius);
    const Complex r2 = arc_residue(0.5 * radius);
    return 2.0 * r2 - r1;
}

// ---------------------------------------------------------------------------
// Foucault interval
// ---------------------------------------------------------------------------

/// The interval (-gamma, -gamma_tilde) on the imaginary axis that hosts the
/// Foucault-current modes; gamma_tilde is the real root in (0, gamma) of
///   x^3 - gamma x^2 + (c^2 k^2 + omega_p^2) x - gamma c^2 k^2 = 0,
/// i.e. the point where K_z vanishes on the negative imaginary axis.
struct FoucaultInterval {
    double gamma_tilde;  ///< inner endpoint magnitude (rad/s); interval is (-gamma, -gamma_tilde) i
    double gamma;        ///< outer endpoint magnitude (rad/s)
};

inline FoucaultInterval foucault_interval(const DielectricModel& m, double k) {
    if (!(m.gamma > 0.0))
        throw invalid_configuration("foucault_interval: undefined for gamma = 0");
    if (k == 0.0) return {0.0, m.gamma};  // degenerate at the origin side
    const double ck2 = codata.c * codata.c * k * k;
    const double wp2 = m.omega_p * m.omega_p;
    auto cubic = [&](double x) { return ((x - m.gamma) * x + ck2 + wp2) * x - m.gamma * ck2; };
    // small-gamma asymptote gamma * c^2 k^2 / (c^2 k^2 + omega_p^2) seeds the bracket
    const double guess = m.gamma * ck2 / (ck2 + wp2);
    double lo = guess, hi = guess;
    while (cubic(lo) > 0.0) lo *= 0.5;
    while (cubic(hi) < 0.0) hi = std::min(0.5 * (hi + m.gamma), m.gamma * (1.0 - 1e-15));
    const double gt = brent_root(cubic, lo, hi, 1e-15 * m.gamma);
    return {gt, m.gamma};
}

// ---------------------------------------------------------------------------
// pole records and numeric pole search
// ---------------------------------------------------------------------------

enum class PoleKind { FabryPerot, Plasmonic, Foucault, Matsubara, Origin };
enum class SingularityClass { Pole, Zero, Cluster };

struct PoleRecord {
    Complex position{};
    int order = 1;            ///< >= 1 for poles and zeros; cluster: see net_winding
    Complex residue{};        ///< poles only (0 for zeros/clusters)
    PoleKind kind = PoleKind::Foucault;
    SingularityClass what = SingularityClass::Pole;
    bool unresolved = false;  ///< cluster that could not be split at max depth
    int net_winding = 0;      ///< Z - P content of a cluster cell
};

/// Z - P summed over a census (poles count negative, zeros positive, clusters net).
inline int census_winding(const std::vector<PoleRecord>& recs) {
    int n = 0;
    for (const auto& r : recs) {
        if (r.what == SingularityClass::Pole) n -= r.order;
        else if (r.what == SingularityClass::Zero) n += r.order;
        else n += r.net_winding;
    }
    return n;
}

namespace detail {

struct Rect {
    double x0, x1, y0, y1;
    double diam() const { return std::hypot(x1 - x0, y1 - y0); }
    Complex center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
};

inline int cell_winding(const std::function<Complex(Complex)>& fn, const Rect& r, double tol) {
    return winding_number(fn, ContourPath::rectangle({r.x0, r.y0}, {r.x1, r.y1}), tol);
}

/// Cheap fixed-order estimate of (1/2 pi) oint |fn'/fn| |dz|: a lower bound on the
/// number of enclosed poles plus zeros. Used to prune N = 0 cells that cannot hide
/// a pole/zero pair.
inline double cell_mass(const std::function<Complex(Complex)>& fn, const Rect& r) {
    const ContourPath path = ContourPath::rectangle({r.x0, r.y0}, {r.x1, r.y1});
    const double h = std::max(1e-5 * path.scale(), 1e-11 * (std::abs(r.center()) + path.scale()));
    double mass = 0.0;
    for (const auto& p : path.pieces()) {
        auto g = [&](double t) {
            const Complex z = piece_point(p, t);
            return std::abs(derivative(fn, z, h) / fn(z)) * std::abs(piece_velocity(p, t));
        };
        mass += gk15(g, 0.0, 0.5).value + gk15(g, 0.5, 1.0).value;
    }
    return mass / (2.0 * pi);
}

/// Newton refinement of an order-m zero of g (pass g = fn for zeros, g = 1/fn for poles).
inline std::optional<Complex> newton_refine(const std::function<Complex(Complex)>& g, Complex z,
                                            int m, double step_scale, double tol) {
    for (int it = 0; it < 80; ++it) {
        const Complex gz = g(z);
        const Complex dg = derivative(g, z, step_scale);
        if (dg == Complex(0.0, 0.0)) return std::nullopt;
        const Complex dz = -double(m) * gz / dg;
        z += dz;
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return std::nullopt;
        if (std::abs(dz) < tol) return z;
    }
    return std::nullopt;
}

inline void emit_cluster(const Rect& c, int net, std::vector<PoleRecord>& out) {
    PoleRecord rec;
    rec.position = c.center();
    rec.what = SingularityClass::Cluster;
    rec.unresolved = true;
    rec.net_winding = net;
    out.push_back(rec);
}

/// Try to turn an N != 0 cell into a single refined record. Fails (nullopt) when the
/// cell holds more than one object, which the tiny-circle order check detects.
inline bool try_refine(const std::function<Complex(Complex)>& fn, const Rect& c, int N,
                       double wind_tol, std::vector<PoleRecord>& out) {
    const double h = std::max(1e-7 * c.diam(), 4e-12 * std::abs(c.center()));
    std::optional<Complex> z;
    if (N < 0) {
        auto inv = [&fn](Complex w) { return 1.0 / fn(w); };
        z = newton_refine(inv, c.center(), -N, h, 1e-9 * c.diam());
    } else {
        z = newton_refine(fn, c.center(), N, h, 1e-9 * c.diam());
    }
    if (!z) return false;
    if (z->real() < c.x0 || z->real() > c.x1 || z->imag() < c.y0 || z->imag() > c.y1) return false;
    // order check on a circle tight around the refined point
    const double rad = std::max(1e-5 * c.diam(), 8.0 * h);
    int order_wind;
    try {
        order_wind =
            winding_number(fn, ContourPath::circle(*z, rad), wind_tol);
    } catch (const error&) {
        return false;
    }
    if (order_wind != N) return false;  // more structure in the cell than this object
    PoleRecord rec;
    rec.position = *z;
    rec.order = std::abs(N);
    rec.what = (N < 0) ? SingularityClass::Pole : SingularityClass::Zero;
    rec.net_winding = N;
    if (N == -1) {
        try {
            rec.residue = residue_at(fn, *z, std::min(0.25 * c.diam(), 1e4 * rad));
        } catch (const error&) {
            rec.residue = Complex(0.0, 0.0);
        }
    }
    out.push_back(rec);
    return true;
}

inline void find_poles_recurse(const std::function<Complex(Complex)>& fn, const Rect& c, int N,
                               double tol, int depth, std::vector<PoleRecord>& out,
                               double wind_tol) {
    if (N == 0) {
        if (c.diam() < 8.0 * tol) return;
        if (cell_mass(fn, c) < 0.45) return;  // no hidden pole/zero pair
    }
    if (N != 0 && std::abs(N) <= 2 && try_refine(fn, c, N, wind_tol, out)) return;
    if (depth <= 0 || c.diam() < tol) {
        if (N != 0) emit_cluster(c, N, out);
        return;
    }
    // quadrisect; nudge the split fractions until every child boundary is clean and
    // the child windings conserve N (no object sits on a split line)
    static constexpr double fracs[4] = {0.5, 0.53, 0.461, 0.571};
    for (int attempt = 0; attempt < 4; ++attempt) {
        const double fx = fracs[attempt];
        const double fy = fracs[(attempt + 1) % 4];
        const double xm = c.x0 + fx * (c.x1 - c.x0);
        const double ym = c.y0 + fy * (c.y1 - c.y0);
        const Rect kids[4] = {{c.x0, xm, c.y0, ym},
                              {xm, c.x1, c.y0, ym},
                              {c.x0, xm, ym, c.y1},
                              {xm, c.x1, ym, c.y1}};
        int nk[4];
        bool ok = true;
        int sum = 0;
        for (int i = 0; i < 4 && ok; ++i) {
            try {
                nk[i] = cell_winding(fn, kids[i], wind_tol);
                sum += nk[i];
            } catch (const error&) {
                ok = false;
            }
        }
        if (!ok || sum != N) continue;
        for (int i = 0; i < 4; ++i)
            find_poles_recurse(fn, kids[i], nk[i], tol, depth - 1, out, wind_tol);
        return;
    }
    emit_cluster(c, N, out);
}

}  // namespace detail

/// Pole/zero census of fn inside an axis-aligned rectangle, by recursive
/// quadrisection on winding numbers followed by Newton refinement. Cells that
/// cannot be resolved at max depth are flagged as unresolved clusters instead
/// of being reported as fabricated positions.
inline std::vector<PoleRecord> find_poles(const std::function<Complex(Complex)>& fn, Complex lo,
                                          Complex hi, double tol, int max_depth = 24,
                                          double wind_tol = 1e-5) {
    detail::Rect root{lo.real(), hi.real(), lo.imag(), hi.imag()};
    // verify the root boundary is healthy: N stable under a small inflation
    const int n0 = detail::cell_winding(fn, root, wind_tol);
    detail::Rect grown{root.x0 - 0.01 * (root.x1 - root.x0), root.x1 + 0.01 * (root.x1 - root.x0),
                       root.y0 - 0.01 * (root.y1 - root.y0), root.y1 + 0.01 * (root.y1 - root.y0)};
    if (detail::cell_winding(fn, grown, wind_tol) != n0)
        throw ill_conditioned_contour("find_poles: winding unstable under boundary perturbation",
                                      n0);
    std::vector<PoleRecord> out;
    detail::find_poles_recurse(fn, root, n0, tol, max_depth, out, wind_tol);
    std::sort(out.begin(), out.end(), [](const PoleRecord& a, const PoleRecord& b) {
        if (a.position.imag() != b.position.imag()) return a.position.imag() < b.position.imag();
        return a.position.real() < b.position.real();
    });
    return out;
}

// ---------------------------------------------------------------------------
// interval-I structure (real parametrization) and width trajectories
// ---------------------------------------------------------------------------

namespace detail {

/// Everything on z = -i x, x in (gamma_tilde, gamma), is real-parametrizable:
/// K_z is real there, |r| = 1, and rho is a real function of x.
struct IntervalIFrame {
    const CavityConfig& cfg;
    double k;
    double gamma_tilde;

    double K(double x) const {
        const double wp2 = cfg.model.omega_p * cfg.model.omega_p;
        const double c2 = codata.c * codata.c;
        const double v = wp2 * x / ((cfg.model.gamma - x) * c2) - x * x / c2 - k * k;
        return std::sqrt(std::max(v, 0.0));
    }
    double kappa_e(double x) const { return std::hypot(k, x / codata.c); }
    /// arg of the bulk TE amplitude (i kappa_e - K)/(i kappa_e + K): 0 at K=0, pi at K=inf
    double psi(double x) const { return pi - 2.0 * std::atan(kappa_e(x) / K(x)); }

    double rho(double x) const {
        const double Kx = K(x), ke = kappa_e(x);
        const Complex r = Complex(-Kx, ke) / Complex(Kx, ke);
        const Complex E = std::exp(Complex(0.0, 2.0 * Kx * cfg.d));
        const Complex rs = r * (1.0 - E) / (1.0 - r * r * E);
        return (rs * rs).real() * std::exp(-2.0 * ke * cfg.L);
    }
};

}  // namespace detail

/// Resolved pole/zero structure of p_TE on the Foucault interval for one slab width.
/// Double zeros sit at K(x) d = pi m; slab-amplitude poles at psi(x) + K(x) d = pi l;
/// poles of f are the rho = 1 crossings bracketed between those points. Enumeration
/// stops after max_structures zeros; the remaining pile accumulating at x = gamma is
/// reported via `truncated`.
struct IntervalIStructures {
    std::vector<double> zeros;        ///< double zeros (|Im z|, ascending)
    std::vector<double> slab_poles;   ///< poles of the slab amplitude (diagnostic)
    std::vector<double> poles;        ///< simple poles of f
    bool truncated = false;
};

inline IntervalIStructures interval_structures(const CavityConfig& cfg, double k,
                                               std::size_t max_structures = 24) {
    if (!(cfg.model.gamma > 0.0))
        throw invalid_configuration("interval_structures: Drude model required");
    if (cfg.d == semi_infinite)
        throw invalid_configuration("interval_structures: finite slab width required");
    const auto iv = foucault_interval(cfg.model, k);
    detail::IntervalIFrame F{cfg, k, iv.gamma_tilde};
    const double a = iv.gamma_tilde * (1.0 + 1e-9);
    const double b = cfg.model.gamma * (1.0 - 1e-12);
    IntervalIStructures out;
    const double Kb = F.K(b);
    // zeros: K(x) d = pi m
    for (std::size_t m = 1;; ++m) {
        const double Kt = pi * double(m) / cfg.d;
        if (Kt >= Kb) break;
        if (out.zeros.size() >= max_structures) {
            out.truncated = true;
            break;
        }
        out.zeros.push_back(
            brent_root([&](double x) { return F.K(x) - Kt; }, a, b, 1e-15 * cfg.model.gamma));
    }
    // slab poles: psi(x) + K(x) d = pi l
    const double Fb = F.psi(b) + Kb * cfg.d;
    for (std::size_t l = 1;; ++l) {
        const double t = pi * double(l);
        if (t >= Fb) break;
        if (out.slab_poles.size() >= max_structures + 2) {
            out.truncated = true;
            break;
        }
        out.slab_poles.push_back(brent_root([&](double x) { return F.psi(x) + F.K(x) * cfg.d - t; },
                                            a, b, 1e-15 * cfg.model.gamma));
    }
    // poles of f: rho = 1 crossings between consecutive structure points
    std::vector<double> marks{a};
    marks.insert(marks.end(), out.zeros.begin(), out.zeros.end());
    marks.insert(marks.end(), out.slab_poles.begin(), out.slab_poles.end());
    marks.push_back(out.truncated ? std::max(out.zeros.empty() ? a : out.zeros.back(),
                                             out.slab_poles.empty() ? a : out.slab_poles.back())
                                  : b);
    std::sort(marks.begin(), marks.end());
    auto g = [&](double x) { return F.rho(x) - 1.0; };
    for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
        const double w = marks[i + 1] - marks[i];
        if (w <= 0.0) continue;
        const double lo = marks[i] + 1e-7 * w, hi = marks[i + 1] - 1e-7 * w;
        const double glo = g(lo), ghi = g(hi);
        if (std::isfinite(glo) && std::isfinite(ghi) && glo * ghi < 0.0)
            out.poles.push_back(brent_root(g, lo, hi, 1e-15 * cfg.model.gamma));
    }
    std::sort(out.poles.begin(), out.poles.end());
    return out;
}

/// Residue of p at a simple pole z = -i x_p on the imaginary axis. p is real on the
/// axis, so the residue is purely imaginary: Res = -i * hbar kappa_e cot(hbar x/2kT) *
/// (-1/rho'(x)), with rho' along the axis.
inline Complex interval_pole_residue(const CavityConfig& cfg, double k, double x_pole) {
    const auto iv = foucault_interval(cfg.model, k);
    detail::IntervalIFrame F{cfg, k, iv.gamma_tilde};
    const double h = 1e-6 * (cfg.model.gamma - iv.gamma_tilde);
    const double rp = derivative([&](double x) { return F.rho(x); }, x_pole, h);
    const double cotv = 1.0 / std::tan(codata.hbar * x_pole / (2.0 * codata.k_B * cfg.T));
    const double A = codata.hbar * F.kappa_e(x_pole) * cotv * (-1.0 / rp);
    return Complex(0.0, -A);
}

enum class TrajectoryClass { Dot, Asterisk, Cluster };

struct TrajectoryPoint {
    double d;  ///< slab width (m)
    PoleRecord record;
    TrajectoryClass cls = TrajectoryClass::Dot;
    int track_id = -1;    ///< continuation identity across the d grid
    bool matched = true;  ///< false where continuation was broken, not interpolated
};

/// Track the interval-I poles/zeros of p_TE across a grid of slab widths.
/// Dot-type rows follow the two unpaired poles; asterisk-type rows follow
/// (double zero + two simple poles) groups, represented by the zero position.
inline std::vector<TrajectoryPoint> trajectory_vs_width(const CavityConfig& cfg, double k,
                                                        const std::vector<double>& d_grid,
                                                        std::size_t max_structures = 24) {
    if (!(cfg.model.gamma > 0.0))
        throw invalid_configuration("trajectory_vs_width: Drude model required");
    if (!std::is_sorted(d_grid.begin(), d_grid.end()))
        throw invalid_configuration("trajectory_vs_width: d_grid must be ascending");
    std::vector<TrajectoryPoint> out;
    struct Track {
        int id;
        TrajectoryClass cls;
        double x_prev;
    };
    std::vector<Track> tracks;
    int next_id = 0;
    const double span = cfg.model.gamma;
    for (double d : d_grid) {
        CavityConfig cd(cfg.L, d, cfg.T, cfg.model);
        const auto st = interval_structures(cd, k, max_structures);
        // classify: poles below the first zero are the dots; each zero plus the
        // poles up to the next zero form an asterisk group
        struct Item {
            double x;
            TrajectoryClass cls;
            bool is_zero;
        };
        std::vector<Item> items;
        const double first_zero =
            st.zeros.empty() ? std::numeric_limits<double>::infinity() : st.zeros.front();
        for (double xp : st.poles)
            if (xp < first_zero) items.push_back({xp, TrajectoryClass::Dot, false});
        for (double xz : st.zeros) items.push_back({xz, TrajectoryClass::Asterisk, true});
        // continuation matching
        std::vector<bool> taken(tracks.size(), false);
        for (auto& it : items) {
            int best = -1;
            double bestdist = 0.25 * span;  // maximum-jump guard
            for (std::size_t j = 0; j < tracks.size(); ++j) {
                if (taken[j] || tracks[j].cls != it.cls) continue;
                const double dist = std::abs(tracks[j].x_prev - it.x);
                if (dist < bestdist) {
                    bestdist = dist;
                    best = static_cast<int>(j);
                }
            }
            TrajectoryPoint tp;
            tp.d = d;
            tp.cls = it.cls;
            tp.record.position = Complex(0.0, -it.x);
            if (it.is_zero) {
                tp.record.what = SingularityClass::Zero;
                tp.record.order = 2;
                tp.record.kind = PoleKind::Foucault;
            } else {
                tp.record.what = SingularityClass::Pole;
                tp.record.order = 1;
                tp.record.kind = PoleKind::Foucault;
                tp.record.residue = interval_pole_residue(cd, k, it.x);
            }
            if (best >= 0) {
                taken[best] = true;
                tracks[best].x_prev = it.x;
                tp.track_id = tracks[best].id;
                tp.matched = true;
            } else {
                tp.track_id = next_id;
                tp.matched = tracks.empty() ? true : false;  // first d: fresh tracks are expected
                tracks.push_back({next_id, it.cls, it.x});
                ++next_id;
            }
            out.push_back(tp);
        }
        if (st.truncated) {
            TrajectoryPoint tp;
            tp.d = d;
            tp.cls = TrajectoryClass::Cluster;
            tp.record.position = Complex(0.0, -cfg.model.gamma);
            tp.record.what = SingularityClass::Cluster;
            tp.record.unresolved = true;
            tp.record.net_winding = 0;  // groups carry zero net winding
            tp.track_id = -1;
            out.push_back(tp);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// real modes of the plasma model
// ---------------------------------------------------------------------------

namespace detail {

/// Unwrapped round-trip phase Phi = 2 arg r + 2 k_z L on the propagative band.
class PropagativePhase {
  public:
    PropagativePhase(const CavityConfig& cfg, double k, Polarization pol)
        : cfg_(cfg), k_(k), pol_(pol) {}

    double raw_angle(double w) const {
        const Complex r = slab_reflection(cfg_.model, Complex(w, 0.0), k_, pol_, cfg_.d);
        return std::arg(r);
    }
    double kz(double w) const { return std::sqrt(w * w / (codata.c * codata.c) - k_ * k_); }
    double phi_from(double angle, double w) const { return 2.0 * angle + 2.0 * kz(w) * cfg_.L; }

  private:
    const CavityConfig& cfg_;
    double k_;
    Polarization pol_;
};

}  // namespace detail

/// Real poles of f for the lossless plasma model: solutions of rho = 1 in
/// (0, sqrt(omega_p^2 + c^2 k^2)), plus the TE origin pole that collects the
/// collapsed Foucault structure. Candidates come from a direct gamma = 0 scan
/// (phase unwrapping in the propagative band, bracketed rho = 1 crossings in the
/// evanescent band); each candidate is then verified by tracking the matching
/// Drude pole through gamma_j = gamma_0 / 2^j until the position shift is below
/// tol. TM lists never contain 0; positive positions only (mirror pairs implied).
inline std::vector<PoleRecord> locate_real_modes(const CavityConfig& cfg, double k,
                                                 Polarization pol, double tol_rel = 1e-9) {
    if (cfg.model.kind != MaterialKind::Plasma)
        throw invalid_configuration("locate_real_modes: plasma model required");
    const double ck = codata.c * k;
    const double Om = std::hypot(cfg.model.omega_p, ck);
    std::vector<double> candidates;

    auto rho_real = [&](double w) {
        return open_loop(cfg, ModeCoordinate{k, pol, Complex(w, 0.0)}).real();
    };

    // evanescent band (TM only; |r_TE| < 1 there)
    if (pol == Polarization::TM) {
        const int n_grid = 6000;
        std::vector<double> xs(n_grid), vs(n_grid);
        for (int i = 0; i < n_grid; ++i) {
            xs[i] = ck * (double(i) + 0.5) / n_grid;
            vs[i] = rho_real(xs[i]) - 1.0;
        }
        for (int i = 0; i + 1 < n_grid; ++i) {
            if (!std::isfinite(vs[i]) || !std::isfinite(vs[i + 1])) continue;
            if (std::abs(vs[i]) > 1e10 || std::abs(vs[i + 1]) > 1e10) continue;
            if (vs[i] * vs[i + 1] < 0.0)
                candidates.push_back(brent_root([&](double w) { return rho_real(w) - 1.0; }, xs[i],
                                                xs[i + 1], 1e-14 * ck));
        }
    }

    // propagative band: unwrap Phi and find crossings of 2 pi m
    {
        detail::PropagativePhase P(cfg, k, pol);
        const double a = ck * (1.0 + 1e-9), b = Om * (1.0 - 1e-12);
        std::vector<double> xs, th;
        const int n0 = 4096;
        xs.reserve(n0);
        for (int i = 0; i <= n0; ++i) xs.push_back(a + (b - a) * double(i) / n0);
        th.resize(xs.size());
        double prev = P.raw_angle(xs[0]);
        th[0] = prev;
        for (std::size_t i = 1; i < xs.size(); ++i) {
            double ang = P.raw_angle(xs[i]);
            while (ang - prev > pi) ang -= 2.0 * pi;
            while (ang - prev < -pi) ang += 2.0 * pi;
            th[i] = ang;
            prev = ang;
        }
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            const double f0 = P.phi_from(th[i], xs[i]);
            const double f1 = P.phi_from(th[i + 1], xs[i + 1]);
            const double off = th[i] - P.raw_angle(xs[i]);  // branch offset valid on this cell
            const long m0 = static_cast<long>(std::ceil(std::min(f0, f1) / (2.0 * pi)));
            const long m1 = static_cast<long>(std::floor(std::max(f0, f1) / (2.0 * pi)));
            for (long m = m0; m <= m1; ++m) {
                auto g = [&](double w) {
                    return P.phi_from(P.raw_angle(w) + off, w) - 2.0 * pi * double(m);
                };
                if (g(xs[i]) * g(xs[i + 1]) <= 0.0)
                    candidates.push_back(brent_root(g, xs[i], xs[i + 1], 1e-14 * Om));
            }
        }
    }
    std::sort(candidates.begin(), candidates.end());

    // gamma -> 0 continuation check (Drude pole tracked onto the axis)
    const double gamma0 = 1e-3 * cfg.model.omega_p;
    std::vector<PoleRecord> out;
    if (pol == Polarization::TE) {
        PoleRecord origin;
        origin.position = Complex(0.0, 0.0);
        origin.order = 1;
        origin.kind = PoleKind::Origin;
        origin.what = SingularityClass::Pole;
        origin.residue =
            Complex(0.0, 2.0 * codata.k_B * cfg.T * k * closed_loop_zero(cfg, k, Polarization::TE));
        out.push_back(origin);
    }
    for (double wm : candidates) {
        Complex z = Complex(wm, -0.5 * gamma0);
        double prev_re = wm;
        bool ok = true;
        for (int j = 0; j < 40; ++j) {
            const double gj = gamma0 / double(1 << std::min(j, 30));
            if (gj < 1e-6 * gamma0) break;
            DielectricModel mj = DielectricModel::drude(cfg.model.omega_p, gj);
            CavityConfig cj(cfg.L, cfg.d, cfg.T, mj);
            auto D = [&](Complex w) {
                return 1.0 - open_loop(cj, ModeCoordinate{k, pol, w});
            };
            auto zr = detail::newton_refine(D, z, 1, std::max(1e-4 * gj, 1e-9 * wm), 1e-12 * wm);
            if (!zr) {
                ok = false;
                break;
            }
            z = *zr;
            if (z.real() <= 0.0 || z.real() >= Om * (1.0 + 1e-9))
                throw window_violation("locate_real_modes: pole left the search window");
            if (std::abs(z.real() - prev_re) < tol_rel * wm && j > 2) break;
            prev_re = z.real();
        }
        if (!ok) continue;
        PoleRecord rec;
        rec.position = Complex(wm, 0.0);
        rec.order = 1;
        rec.what = SingularityClass::Pole;
        rec.kind = (wm > ck) ? PoleKind::FabryPerot : PoleKind::Plasmonic;
        // one-sided residue along the axis: Res = -hbar k_z C / rho'(w_m)
        const double h = 1e-6 * wm;
        const Complex rp = derivative(
            [&](double w) { return open_loop(cfg, ModeCoordinate{k, pol, Complex(w, 0.0)}); }, wm,
            h);
        rec.residue = -codata.hbar * vacuum_kz(Complex(wm, 0.0), k) *
                      photon_weight(cfg.T, Complex(wm, 0.0)) / rp;
        out.push_back(rec);
    }
    return out;
}

/// The contour family used for the mode counts: a circle around the origin only,
/// a rectangle around the Foucault interval only, and a rectangle around both.
/// Geometry is anchored to gamma_tilde so the three enclosures stay disjoint.
struct ModeCountContours {
    ContourPath around_origin;
    ContourPath around_interval;
    ContourPath around_both;
};

inline ModeCountContours mode_count_contours(const DielectricModel& m, double k) {
    const auto iv = foucault_interval(m, k);
    if (!(iv.gamma_tilde > 0.0))
        throw invalid_configuration("mode_count_contours: k = 0 degenerates the interval");
    const double gt = iv.gamma_tilde, g = iv.gamma;
    return ModeCountContours{
        ContourPath::circle(Complex(0.0, 0.0), 0.5 * gt),
        ContourPath::rectangle(Complex(-0.3 * g, -1.2 * g), Complex(0.3 * g, -0.7 * gt)),
        ContourPath::rectangle(Complex(-0.3 * g, -1.2 * g), Complex(0.3 * g, 0.7 * gt))};
}

}  // namespace casimir
