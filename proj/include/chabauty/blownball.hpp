#pragma once

#include <chabauty/sl3.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

namespace chabauty::blownball {

// The model space C: the closed 3-ball in (x, y, z') coordinates with the six
// boundary points on the coordinate axes blown up into three disks (each disk
// absorbing an antipodal pair). z' is the signed square root of z.

inline double to_zprime(double z) { return std::copysign(std::sqrt(std::abs(z)), z); }
inline double from_zprime(double zp) { return std::copysign(zp * zp, zp); }

enum class Stratum { Interior, Disk, DiskBoundary, Sphere };

struct Point {
    Stratum stratum = Stratum::Interior;
    Root3 gamma = Root3::Alpha;    // Disk / DiskBoundary only
    std::array<double, 3> xyz{};   // Interior: (x, y, z'); Sphere: unit representative
    std::array<double, 2> uv{};    // Disk: chart coordinates; DiskBoundary: unit circle

    static Point interior(double x, double y, double zp) {
        Point p;
        p.stratum = Stratum::Interior;
        p.xyz = {x, y, zp};
        return p;
    }
    static Point disk(Root3 g, double u, double v) {
        Point p;
        p.stratum = Stratum::Disk;
        p.gamma = g;
        p.uv = {u, v};
        return p;
    }
    static Point disk_boundary(Root3 g, double u, double v) {
        double n = std::hypot(u, v);
        if (!(n > 0)) throw std::invalid_argument("disk_boundary: zero direction");
        Point p;
        p.stratum = Stratum::DiskBoundary;
        p.gamma = g;
        p.uv = {u / n, v / n};
        if (p.uv[0] < 0 || (p.uv[0] == 0 && p.uv[1] < 0)) {
            p.uv[0] = -p.uv[0];
            p.uv[1] = -p.uv[1];
        }
        return p;
    }
    static Point sphere(double x, double y, double zp) {
        double n = std::sqrt(x * x + y * y + zp * zp);
        if (!(n > 0)) throw std::invalid_argument("sphere: zero direction");
        Point p;
        p.stratum = Stratum::Sphere;
        p.xyz = {x / n, y / n, zp / n};
        int lead = 0;
        while (lead < 3 && p.xyz[lead] == 0) ++lead;
        if (lead < 3 && p.xyz[lead] < 0)
            for (auto& c : p.xyz) c = -c;
        return p;
    }
};

// ---------------------------------------------------------------------------
// The projective line as the double-angle circle.
// ---------------------------------------------------------------------------

struct P1Point {
    double angle = 0; // in [0, 2*pi)
};

inline P1Point p1_from_ratio(double a, double b) {
    if (a == 0 && b == 0) throw std::invalid_argument("p1_from_ratio: zero vector");
    double t = 2 * std::atan2(b, a);
    t = std::fmod(t, 2 * M_PI);
    if (t < 0) t += 2 * M_PI;
    return {t};
}

inline double p1_distance(P1Point p, P1Point q) {
    double d = std::fabs(p.angle - q.angle);
    return std::min(d, 2 * M_PI - d);
}

// ---------------------------------------------------------------------------
// The collapse maps onto the three disks and the boundary circle maps.
// ---------------------------------------------------------------------------

struct DiskValue {
    bool boundary = false;
    double u = 0, v = 0; // boundary values normalized to the unit circle
};

/// f_gamma on interior and sphere strata; the antipodal pair blown up into
/// the target disk is excluded from the domain.
inline DiskValue f_map(Root3 target, const Point& p) {
    auto pack = [&](double u, double v, bool boundary) {
        DiskValue d;
        d.boundary = boundary;
        if (boundary) {
            double n = std::hypot(u, v);
            if (!(n > 0)) throw std::invalid_argument("f_map: excluded antipodal point");
            d.u = u / n;
            d.v = v / n;
        } else {
            d.u = u;
            d.v = v;
        }
        return d;
    };
    bool on_sphere = p.stratum == Stratum::Sphere;
    if (p.stratum != Stratum::Interior && !on_sphere)
        throw std::invalid_argument("f_map: defined on interior and sphere strata");
    double x = p.xyz[0], y = p.xyz[1], zp = p.xyz[2];
    double z = from_zprime(zp);
    switch (target) {
    case Root3::Alpha: return pack(y, to_zprime(z + x * y / 2), on_sphere);
    case Root3::Beta: return pack(x, to_zprime(z - x * y / 2), on_sphere);
    case Root3::AlphaBeta: return pack(x, y, on_sphere);
    }
    throw std::logic_error("f_map");
}

/// g on C0: the sphere minus the six blown points, plus the three circles.
inline P1Point g_map(const Point& p) {
    if (p.stratum == Stratum::Sphere) {
        double x = p.xyz[0], y = p.xyz[1], z = from_zprime(p.xyz[2]);
        return p1_from_ratio(x * (z + x * y / 2), y * (-z + x * y / 2));
    }
    if (p.stratum == Stratum::DiskBoundary) {
        double u = p.uv[0], v = p.uv[1];
        switch (p.gamma) {
        case Root3::Alpha: return p1_from_ratio(from_zprime(v), u * u);       // [z : y^2]
        case Root3::Beta: return p1_from_ratio(-u * u, from_zprime(v));       // [-x^2 : z]
        case Root3::AlphaBeta: return p1_from_ratio(-u, v);                   // [-x : y]
        }
    }
    throw std::invalid_argument("g_map: point is not in C0");
}

// ---------------------------------------------------------------------------
// The parametrization phi of the boundary space by C.
// ---------------------------------------------------------------------------

namespace detail {

inline Eigen::Matrix3d bmat(double x, double y, double z) {
    Eigen::Matrix3d b = Eigen::Matrix3d::Identity();
    b(0, 1) = x;
    b(1, 2) = y;
    b(0, 2) = z + x * y / 2;
    return b;
}

inline Eigen::Matrix3d bmat_inv(double x, double y, double z) {
    Eigen::Matrix3d b = Eigen::Matrix3d::Identity();
    b(0, 1) = -x;
    b(1, 2) = -y;
    b(0, 2) = -z + x * y / 2;
    return b;
}

inline Eigen::VectorXd sl3_coords_d(const Eigen::Matrix3d& m) {
    Eigen::VectorXd v(8);
    v[0] = m(0, 1);
    v[1] = m(0, 2);
    v[2] = m(1, 2);
    v[3] = m(0, 0);
    v[4] = m(0, 0) + m(1, 1);
    v[5] = m(1, 0);
    v[6] = m(2, 0);
    v[7] = m(2, 1);
    return v;
}

inline SubspaceF subspace_from_rows_d(std::vector<Eigen::VectorXd> rows) {
    std::vector<Eigen::VectorXd> q;
    for (auto& v : rows) {
        double m = v.cwiseAbs().maxCoeff();
        if (m > 0) v /= m;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& u : q) v -= u.dot(v) * u;
        double n = v.norm();
        if (!(n > 1e-250)) throw std::logic_error("subspace_from_rows_d: dependent rows");
        q.push_back(v / n);
    }
    SubspaceF f;
    f.ambient = rows.empty() ? 0 : static_cast<long>(q[0].size());
    f.r = static_cast<long>(q.size());
    f.P = Eigen::MatrixXd::Zero(f.ambient, f.ambient);
    for (const auto& u : q) f.P += u * u.transpose();
    return f;
}

inline Eigen::Matrix3d h_alpha_d() {
    return Eigen::Vector3d(2.0 / 3, -1.0 / 3, -1.0 / 3).asDiagonal();
}
inline Eigen::Matrix3d h_beta_d() {
    return Eigen::Vector3d(1.0 / 3, 1.0 / 3, -2.0 / 3).asDiagonal();
}
inline Eigen::Matrix3d unit(int i, int j) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    m(i, j) = 1;
    return m;
}

inline SubspaceF conjugated_plane(double x, double y, double z,
                                  const std::vector<Eigen::Matrix3d>& gens) {
    Eigen::Matrix3d b = bmat(x, y, z), bi = bmat_inv(x, y, z);
    std::vector<Eigen::VectorXd> rows;
    rows.reserve(gens.size());
    for (const auto& g : gens) rows.push_back(sl3_coords_d(b * g * bi));
    return subspace_from_rows_d(std::move(rows));
}

inline SubspaceF proj_line_plane(P1Point t) {
    double a = std::cos(t.angle / 2), b = std::sin(t.angle / 2);
    std::vector<Eigen::VectorXd> rows{sl3_coords_d(a * unit(0, 1) + b * unit(1, 2)),
                                      sl3_coords_d(unit(0, 2))};
    return subspace_from_rows_d(std::move(rows));
}

} // namespace detail

/// phi: interior points to conjugated Cartans, disks to conjugated wall
/// planes, and all of C0 through g to the projective family.
inline SubspaceF phi(const Point& p) {
    switch (p.stratum) {
    case Stratum::Interior: {
        double x = p.xyz[0], y = p.xyz[1], z = from_zprime(p.xyz[2]);
        return detail::conjugated_plane(x, y, z,
                                        {detail::h_alpha_d(), detail::h_beta_d()});
    }
    case Stratum::Disk: {
        double u = p.uv[0], v = p.uv[1];
        switch (p.gamma) {
        case Root3::Alpha:
            return detail::conjugated_plane(0, u, from_zprime(v),
                                            {detail::h_beta_d(), detail::unit(0, 1)});
        case Root3::Beta:
            return detail::conjugated_plane(u, 0, from_zprime(v),
                                            {detail::h_alpha_d(), detail::unit(1, 2)});
        case Root3::AlphaBeta:
            return detail::conjugated_plane(
                u, v, 0,
                {detail::h_alpha_d() - detail::h_beta_d(), detail::unit(0, 2)});
        }
        throw std::logic_error("phi");
    }
    case Stratum::DiskBoundary:
    case Stratum::Sphere: return detail::proj_line_plane(g_map(p));
    }
    throw std::logic_error("phi");
}

/// Exact counterpart on rational interior and disk points.
inline SubspaceQ phi_exact(const Rat& x, const Rat& y, const Rat& z) {
    return adjoint_subspace(b_family(x, y, z), sl3::cartan());
}

inline SubspaceQ phi_exact_disk(Root3 g, const Rat& s, const Rat& t) {
    switch (g) {
    case Root3::Alpha: return adjoint_subspace(b_family(Rat(0), s, t), sl3::l_root(g));
    case Root3::Beta: return adjoint_subspace(b_family(s, Rat(0), t), sl3::l_root(g));
    case Root3::AlphaBeta: return adjoint_subspace(b_family(s, t, Rat(0)), sl3::l_root(g));
    }
    throw std::logic_error("phi_exact_disk");
}

// ---------------------------------------------------------------------------
// Attaching degrees and the cell census.
// ---------------------------------------------------------------------------

/// Absolute winding number of a boundary circle map, from dense angular
/// samples lifted to the double-angle circle; sampling is refined until no
/// consecutive lifted gap reaches pi/2.
inline long circle_degree(Root3 map_id, int samples = 512) {
    for (int k = std::max(samples, 16); k <= (1 << 20); k *= 2) {
        double lifted = 0, prev = 0;
        bool aliased = false;
        for (int i = 0; i <= k; ++i) {
            double t = 2 * M_PI * i / k;
            Point p; // raw circle point: traverse the whole circle, not the quotient
            p.stratum = Stratum::DiskBoundary;
            p.gamma = map_id;
            p.uv = {std::cos(t), std::sin(t)};
            double a = g_map(p).angle;
            if (i == 0) {
                prev = a;
                continue;
            }
            double step = a - prev;
            while (step > M_PI) step -= 2 * M_PI;
            while (step < -M_PI) step += 2 * M_PI;
            if (std::fabs(step) >= M_PI / 2) {
                aliased = true;
                break;
            }
            lifted += step;
            prev = a;
        }
        if (!aliased) return std::lround(std::fabs(lifted) / (2 * M_PI));
    }
    throw std::runtime_error("circle_degree: aliasing persists after refinement");
}

/// Cells of the boundary space by dimension, derived from the orbit
/// dimensions of the eight representatives.
inline std::map<long, long> cell_census() {
    std::map<long, long> census;
    for (auto label : sl3::orbit_labels())
        census[sl3::b0_orbit_dim(sl3::orbit_representative(label))]++;
    return census;
}

/// Order of the fundamental group read off the attaching degrees: the circle
/// survives modulo the gcd of the nonzero degrees. Empty optional = infinite.
inline std::optional<unsigned long long> pi1_from_degrees(const std::vector<long>& degrees) {
    unsigned long long g = 0;
    for (long d : degrees) g = std::gcd(g, static_cast<unsigned long long>(std::labs(d)));
    if (g == 0) return std::nullopt;
    return g;
}

// ---------------------------------------------------------------------------
// Continuity probes.
// ---------------------------------------------------------------------------

struct ProbeReport {
    std::vector<double> radii;
    std::vector<double> phi_deviation; // max over samples, per radius
    std::vector<double> g_deviation;   // only for targets in C0
    bool decreasing = true;
    bool pass = false;
};

/// Samples approach sequences to the target, per stratum allowed to converge
/// to it, and reports the worst image deviation at each scale.
inline ProbeReport continuity_probe(const Point& target, int k, std::vector<double> radii,
                                    double tol, Rng& rng) {
    if (k < 10) throw std::invalid_argument("continuity_probe: need k >= 10");
    ProbeReport rep;
    rep.radii = radii;
    SubspaceF target_img = phi(target);
    bool in_c0 = target.stratum == Stratum::Sphere || target.stratum == Stratum::DiskBoundary;

    for (double rho : radii) {
        double worst_phi = 0, worst_g = 0;
        for (int i = 0; i < k; ++i) {
            double d1 = rng.uniform_real(-1, 1), d2 = rng.uniform_real(-1, 1);
            double sign = rng.uniform(0, 1) == 0 ? -1.0 : 1.0;
            std::vector<Point> approaches;
            switch (target.stratum) {
            case Stratum::Interior:
                approaches.push_back(Point::interior(target.xyz[0] + rho * d1,
                                                     target.xyz[1] + rho * d2,
                                                     target.xyz[2] + rho * (d1 - d2) / 2));
                break;
            case Stratum::Disk: {
                double u = target.uv[0] + rho * d1, v = target.uv[1] + rho * d2;
                approaches.push_back(Point::disk(target.gamma, u, v));
                // interior escape with the collapse image pinned near (u, v)
                double big = sign / (rho * rho);
                switch (target.gamma) {
                case Root3::Alpha: {
                    double z = from_zprime(v) - big * u / 2;
                    approaches.push_back(Point::interior(big, u, to_zprime(z)));
                    break;
                }
                case Root3::Beta: {
                    double z = from_zprime(v) + big * u / 2;
                    approaches.push_back(Point::interior(u, big, to_zprime(z)));
                    break;
                }
                case Root3::AlphaBeta:
                    approaches.push_back(Point::interior(u, v, to_zprime(big)));
                    break;
                }
                break;
            }
            case Stratum::DiskBoundary: {
                double cu = target.uv[0], cv = target.uv[1];
                double u = cu - rho * d1 * cv, v = cv + rho * d1 * cu; // rotate slightly
                approaches.push_back(Point::disk_boundary(target.gamma, u, v));
                // disk points escaping toward the boundary direction
                double scale = 1 / rho;
                approaches.push_back(Point::disk(target.gamma, scale * u, scale * v));
                // interior points escaping with the collapse image aligned
                double big = sign / (rho * rho * rho);
                switch (target.gamma) {
                case Root3::Alpha: {
                    double y = scale * u, z = from_zprime(scale * v) - big * y / 2;
                    approaches.push_back(Point::interior(big, y, to_zprime(z)));
                    break;
                }
                case Root3::Beta: {
                    double x = scale * u, z = from_zprime(scale * v) + x * big / 2;
                    approaches.push_back(Point::interior(x, big, to_zprime(z)));
                    break;
                }
                case Root3::AlphaBeta:
                    approaches.push_back(Point::interior(scale * u, scale * v, to_zprime(big)));
                    break;
                }
                break;
            }
            case Stratum::Sphere: {
                double x = target.xyz[0] + rho * d1, y = target.xyz[1] + rho * d2,
                       zp = target.xyz[2] + rho * (d1 + d2) / 2;
                approaches.push_back(Point::sphere(x, y, zp));
                // interior points escaping along the direction
                double scale = 1 / rho;
                approaches.push_back(Point::interior(scale * x, scale * y, scale * zp));
                break;
            }
            }
            for (const Point& q : approaches) {
                worst_phi = std::max(worst_phi, distance(phi(q), target_img));
                if (in_c0 && (q.stratum == Stratum::Sphere || q.stratum == Stratum::DiskBoundary))
                    worst_g = std::max(worst_g, p1_distance(g_map(q), g_map(target)));
            }
        }
        rep.phi_deviation.push_back(worst_phi);
        if (in_c0) rep.g_deviation.push_back(worst_g);
    }
    for (size_t i = 1; i < rep.phi_deviation.size(); ++i)
        if (rep.phi_deviation[i] > rep.phi_deviation[i - 1]) rep.decreasing = false;
    rep.pass = rep.decreasing && rep.phi_deviation.back() < tol;
    return rep;
}

/// Random point of C across all strata.
inline Point random_point(Rng& rng) {
    Root3 roots[] = {Root3::Alpha, Root3::Beta, Root3::AlphaBeta};
    switch (rng.uniform(0, 3)) {
    case 0:
        return Point::interior(rng.uniform_real(-3, 3), rng.uniform_real(-3, 3),
                               rng.uniform_real(-3, 3));
    case 1:
        return Point::disk(roots[rng.uniform(0, 2)], rng.uniform_real(-3, 3),
                           rng.uniform_real(-3, 3));
    case 2: {
        double t = rng.uniform_real(0, 2 * M_PI);
        return Point::disk_boundary(roots[rng.uniform(0, 2)], std::cos(t), std::sin(t));
    }
    default: {
        for (;;) {
            double x = rng.uniform_real(-1, 1), y = rng.uniform_real(-1, 1),
                   zp = rng.uniform_real(-1, 1);
            double n = std::sqrt(x * x + y * y + zp * zp);
            if (n < 1e-3) continue;
            // keep clear of the six blown points
            Point p = Point::sphere(x, y, zp);
            double ax = std::fabs(p.xyz[0]), ay = std::fabs(p.xyz[1]), az = std::fabs(p.xyz[2]);
            if (std::max({ax, ay, az}) > 0.98) continue;
            return p;
        }
    }
    }
}

struct InjectivityReport {
    int pairs = 0;
    int compared = 0;
    int identified = 0; // pairs identified by the g-quotient
    double min_distance = std::numeric_limits<double>::infinity();
    bool pass = false;
};

/// phi separates points, after factoring C0 through g.
inline InjectivityReport injectivity_probe(int pairs, double threshold, Rng& rng) {
    InjectivityReport rep;
    rep.pairs = pairs;
    for (int i = 0; i < pairs; ++i) {
        Point p = random_point(rng), q = random_point(rng);
        bool p0 = p.stratum == Stratum::Sphere || p.stratum == Stratum::DiskBoundary;
        bool q0 = q.stratum == Stratum::Sphere || q.stratum == Stratum::DiskBoundary;
        if (p0 && q0 && p1_distance(g_map(p), g_map(q)) < 1e-4) {
            // identified in the quotient: the images must agree instead
            rep.identified++;
            continue;
        }
        double d = distance(phi(p), phi(q));
        rep.compared++;
        rep.min_distance = std::min(rep.min_distance, d);
    }
    rep.pass = rep.min_distance > threshold;
    return rep;
}

} // namespace chabauty::blownball
