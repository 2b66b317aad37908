// Command-line front end: classification, limit certification, verification
// suites, and figure-data emission. One UTF-8 JSON document per invocation.
//
// Exit codes: 0 = success / all checks passed, 1 = a verification failed,
// 2 = usage, parse, or precondition error.

#include <chabauty/verify.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

using namespace chabauty;
using io::json;

namespace {

// --- small polynomial-in-n parser for sequence parameters ("n^3", "1/2n", "-2n^2+1")

PolyQ parse_poly(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty polynomial");
    std::vector<Rat> coeffs;
    auto bump = [&](size_t deg, const Rat& c) {
        if (coeffs.size() <= deg) coeffs.resize(deg + 1);
        coeffs[deg] += c;
    };
    size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') sign = -sign;
            ++i;
        }
        if (i >= s.size()) throw std::invalid_argument("dangling sign in polynomial");
        std::string num;
        while (i < s.size() && (isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) num += s[i++];
        if (i < s.size() && s[i] == '*') ++i;
        Rat coef = num.empty() ? Rat(1) : rat_from_string(num);
        size_t deg = 0;
        if (i < s.size() && s[i] == 'n') {
            ++i;
            deg = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::string e;
                while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) e += s[i++];
                if (e.empty()) throw std::invalid_argument("missing exponent");
                deg = std::stoul(e);
            }
        } else if (num.empty()) {
            throw std::invalid_argument("unexpected character in polynomial: " + s.substr(i, 1));
        }
        bump(deg, sign > 0 ? coef : -coef);
    }
    return PolyQ(std::move(coeffs));
}

Rat eval_poly(const PolyQ& p, long n) { return p(Rat(n)); }

std::vector<Rat> split_ratios(const std::string& text, char sep) {
    std::vector<Rat> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            out.push_back(rat_from_string(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(rat_from_string(cur));
    return out;
}

json subspace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    in >> j;
    return j;
}

json limit_result_json(const std::string& family, const std::vector<long>& schedule,
                       const LimitEstimate& est, const std::optional<SubspaceQ>& predicted,
                       double tol) {
    json out{{"family", family},
             {"schedule", schedule},
             {"gaps", est.gaps},
             {"certified", est.certified},
             {"tol", tol}};
    if (!est.note.empty()) out["note"] = est.note;
    out["limit_plucker_float"] = io::plucker_float_json(plucker(est.last_exact));
    if (predicted) {
        double d = distance(est.limit, to_float(*predicted));
        out["predicted"] = io::subspace_json(*predicted);
        out["predicted_distance"] = d;
        out["predicted_match"] = est.certified && d < tol;
    }
    return out;
}

json classify_sl3_json(const SubspaceQ& s) {
    auto c = sl3::classify(s);
    json out{{"algebra", "sl3"}, {"orbit_label", sl3::orbit_name(sl3::orbit_label(c))}};
    switch (c.tag) {
    case sl3::Tag::CartanConj:
        out["tag"] = "CartanConj";
        out["parameters"] = {io::rat_json(c.cartan_xyz[0]), io::rat_json(c.cartan_xyz[1]),
                             io::rat_json(c.cartan_xyz[2])};
        break;
    case sl3::Tag::Lproj:
        out["tag"] = "Lproj";
        out["point"] = {c.point.x.str(), c.point.y.str()};
        break;
    case sl3::Tag::LRoot:
        out["tag"] = "LRoot";
        out["root"] = root_name(c.root);
        out["parameters"] = {io::rat_json(c.root_params.first), io::rat_json(c.root_params.second)};
        break;
    }
    out["witness"] = io::group_json(c.witness());
    return out;
}

json classify_sl4_json(const SubspaceQ& s) {
    auto c = sl4::classify(s);
    json out{{"algebra", "sl4"}, {"tag", sl4::tag_name(c.tag)}};
    switch (c.tag) {
    case sl4::Tag::T2: out["root"] = root_name(c.delta); break;
    case sl4::Tag::T3:
    case sl4::Tag::T5: out["point"] = {c.p1.x.str(), c.p1.y.str()}; break;
    case sl4::Tag::T6:
        out["point"] = {c.p2.x.str(), c.p2.y.str(), c.p2.z.str()};
        out["shear"] = io::rat_json(c.shear);
        break;
    case sl4::Tag::T7:
    case sl4::Tag::T8:
        out["parameters"] = {io::rat_json(c.pair_params.first), io::rat_json(c.pair_params.second)};
        break;
    case sl4::Tag::T9:
        out["point"] = {c.p3.v[0].str(), c.p3.v[1].str(), c.p3.v[2].str(), c.p3.v[3].str()};
        break;
    case sl4::Tag::T10:
        out["parameters"] = {io::rat_json(c.pair_params.first), io::rat_json(c.pair_params.second)};
        out["shear"] = io::rat_json(c.shear);
        break;
    default: break;
    }
    out["witness"] = io::group_json(c.witness);
    out["maximal_abelian_in_borel"] = sl4::is_maximal_abelian_in_b(s);
    return out;
}

// float Pluecker shadow of a two-plane given by float basis rows
json plucker_float_rows(const std::vector<Eigen::VectorXd>& rows) {
    long d = rows[0].size();
    std::vector<double> v;
    double norm = 0;
    for (long i = 0; i < d; ++i)
        for (long j = i + 1; j < d; ++j) {
            double m = rows[0][i] * rows[1][j] - rows[0][j] * rows[1][i];
            v.push_back(m);
            norm += m * m;
        }
    norm = std::sqrt(norm);
    int lead = 0;
    for (double& x : v)
        if (lead == 0 && std::fabs(x) > 1e-12 * norm) lead = x > 0 ? 1 : -1;
    json out = json::array();
    for (double x : v) out.push_back((lead < 0 ? -x : x) / norm);
    return out;
}

json blownball_point_json(const blownball::Point& p) {
    json out;
    switch (p.stratum) {
    case blownball::Stratum::Interior:
        out["stratum"] = "interior";
        out["coords"] = {p.xyz[0], p.xyz[1], p.xyz[2]};
        break;
    case blownball::Stratum::Disk:
        out["stratum"] = "disk";
        out["gamma"] = root_name(p.gamma);
        out["coords"] = {p.uv[0], p.uv[1]};
        break;
    case blownball::Stratum::DiskBoundary:
        out["stratum"] = "disk-boundary";
        out["gamma"] = root_name(p.gamma);
        out["coords"] = {p.uv[0], p.uv[1]};
        break;
    case blownball::Stratum::Sphere:
        out["stratum"] = "sphere";
        out["coords"] = {p.xyz[0], p.xyz[1], p.xyz[2]};
        break;
    }
    // the float Pluecker shadow of the image plane
    SubspaceF f = blownball::phi(p);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(f.P);
    std::vector<Eigen::VectorXd> rows{es.eigenvectors().col(6), es.eigenvectors().col(7)};
    out["phi_plucker_float"] = plucker_float_rows(rows);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact classification and limit certification for the boundary of the space "
                 "of diagonalizable planes in sl_n, n <= 4"};
    app.require_subcommand(1);

    std::uint64_t seed = 20260810;
    if (const char* env = std::getenv("CHABAUTY_SEED")) seed = std::strtoull(env, nullptr, 10);
    double tol_env = -1;
    if (const char* env = std::getenv("CHABAUTY_TOL")) tol_env = std::strtod(env, nullptr);

    // classify
    std::string algebra = "sl3", subspace_path;
    auto* cmd_classify = app.add_subcommand("classify", "classify a subspace of the Borel");
    cmd_classify->add_option("--algebra", algebra, "sl3 or sl4")->check(CLI::IsMember({"sl3", "sl4"}));
    cmd_classify->add_option("--subspace", subspace_path, "JSON subspace file")->required();

    // plucker
    std::string plucker_path;
    auto* cmd_plucker = app.add_subcommand("plucker", "canonical Pluecker vector of a subspace");
    cmd_plucker->add_option("--subspace", plucker_path, "JSON subspace file")->required();

    // limit
    std::string family, xn = "0", yn = "0", zn = "0", point, pair, delta = "alpha",
                schedule_text = "10,100,1000";
    double tol_opt = -1;
    auto* cmd_limit = app.add_subcommand("limit", "certify the limit of a subspace sequence");
    cmd_limit->add_option("--family", family,
                          "lemma53 | lemma57-alpha | lemma57-beta | lemma57-ab | lemma57-proj | "
                          "thm62-T1..thm62-T10 | sl2-line | constant-sl3")
        ->required();
    cmd_limit->add_option("--xn", xn, "polynomial in n");
    cmd_limit->add_option("--yn", yn, "polynomial in n");
    cmd_limit->add_option("--zn", zn, "polynomial in n");
    cmd_limit->add_option("--point", point, "projective point, e.g. 1:2 or 1:0:0:1");
    cmd_limit->add_option("--pair", pair, "parameter pair, e.g. 1,-2");
    cmd_limit->add_option("--delta", delta, "simple root for thm62-T2");
    cmd_limit->add_option("--schedule", schedule_text, "comma-separated increasing indices");
    cmd_limit->add_option("--tol", tol_opt, "certification tolerance");

    // verify
    std::string suite, thm62_tag;
    std::uint64_t seed_opt = seed;
    double vtol = -1;
    auto* cmd_verify = app.add_subcommand("verify", "run a verification suite");
    cmd_verify->add_option("--suite", suite, "suite name or 'all'")->required();
    cmd_verify->add_option("--seed", seed_opt, "PRNG seed");
    cmd_verify->add_option("--tol", vtol, "tolerance override");
    cmd_verify->add_option("--tag", thm62_tag, "restrict thm62 to one type, e.g. T6");

    // emit-figure
    std::string which = "blownball", output_path = "-";
    int samples = 0;
    std::uint64_t fig_seed = seed;
    auto* cmd_figure = app.add_subcommand("emit-figure", "emit plot data for the boundary model");
    cmd_figure->add_option("--which", which, "blownball or cw")
        ->check(CLI::IsMember({"blownball", "cw"}));
    cmd_figure->add_option("--samples", samples, "number of sampled points");
    cmd_figure->add_option("--seed", fig_seed, "PRNG seed");
    cmd_figure->add_option("--output", output_path, "output path, '-' for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        json out;
        int exit_code = 0;

        if (*cmd_classify) {
            SubspaceQ s = io::subspace_from_json(subspace_file(subspace_path));
            out = algebra == "sl3" ? classify_sl3_json(s) : classify_sl4_json(s);
        } else if (*cmd_plucker) {
            SubspaceQ s = io::subspace_from_json(subspace_file(plucker_path));
            out = io::plucker_json(plucker(s));
        } else if (*cmd_limit) {
            double tol = tol_opt > 0 ? tol_opt : (tol_env > 0 ? tol_env : 1e-4);
            std::vector<long> schedule;
            for (const auto& r : split_ratios(schedule_text, ','))
                schedule.push_back(static_cast<long>(to_double(r)));

            SeqFamily fam{family, nullptr};
            std::optional<SubspaceQ> predicted;

            if (family == "lemma53") {
                PolyQ px = parse_poly(xn), py = parse_poly(yn), pz = parse_poly(zn);
                fam.generate = [=](long n) {
                    return adjoint_subspace(
                        b_family(eval_poly(px, n), eval_poly(py, n), eval_poly(pz, n)),
                        sl3::cartan());
                };
                // detect which escape regime the parameters follow
                auto shifted_plus = poly_add(pz, poly_scale(poly_mul(px, py), rat(1, 2)));
                auto shifted_minus = poly_sub(pz, poly_scale(poly_mul(px, py), rat(1, 2)));
                auto limit_of = [](const PolyQ& p) {
                    return p.degree() <= 0 ? (p.is_zero() ? Rat(0) : p.c[0]) : Rat(0);
                };
                if (px.degree() >= 1 && py.degree() <= 0 && shifted_plus.degree() <= 0)
                    predicted = sl3::predicted_limit_cartan(sl3::CartanLimitCase::ToAlpha,
                                                            limit_of(py), limit_of(shifted_plus));
                else if (py.degree() >= 1 && px.degree() <= 0 && shifted_minus.degree() <= 0)
                    predicted = sl3::predicted_limit_cartan(sl3::CartanLimitCase::ToBeta,
                                                            limit_of(px), limit_of(shifted_minus));
                else if (pz.degree() >= 1 && px.degree() <= 0 && py.degree() <= 0)
                    predicted = sl3::predicted_limit_cartan(sl3::CartanLimitCase::ToAlphaBeta,
                                                            limit_of(px), limit_of(py));
                else {
                    PolyQ p1 = poly_mul(px, shifted_plus);
                    PolyQ p2 = poly_mul(py, poly_neg(shifted_minus));
                    if (!p1.is_zero() || !p2.is_zero()) {
                        long d1 = p1.degree(), d2 = p2.degree();
                        Rat a = d1 >= d2 && d1 >= 0 ? p1.leading() : Rat(0);
                        Rat b = d2 >= d1 && d2 >= 0 ? p2.leading() : Rat(0);
                        predicted = sl3::l_proj(a, b);
                    }
                }
            } else if (family == "lemma57-alpha" || family == "lemma57-beta" ||
                       family == "lemma57-ab") {
                PolyQ p1 = parse_poly(family == "lemma57-alpha" ? yn : xn);
                PolyQ p2 =
                    parse_poly(family == "lemma57-alpha" || family == "lemma57-beta" ? zn : yn);
                Root3 root = family == "lemma57-alpha"
                                 ? Root3::Alpha
                                 : (family == "lemma57-beta" ? Root3::Beta : Root3::AlphaBeta);
                fam.generate = [=](long n) {
                    Rat a = eval_poly(p1, n), b = eval_poly(p2, n);
                    switch (root) {
                    case Root3::Alpha:
                        return adjoint_subspace(b_family(Rat(0), a, b), sl3::l_root(root));
                    case Root3::Beta:
                        return adjoint_subspace(b_family(a, Rat(0), b), sl3::l_root(root));
                    default:
                        return adjoint_subspace(b_family(a, b, Rat(0)), sl3::l_root(root));
                    }
                };
                // invariant ratios of the three drift regimes
                PolyQ num, den;
                if (root == Root3::Alpha) {
                    num = p2;               // z_n
                    den = poly_mul(p1, p1); // y_n^2
                } else if (root == Root3::Beta) {
                    num = poly_neg(poly_mul(p1, p1)); // -x_n^2
                    den = p2;                         // z_n
                } else {
                    num = poly_neg(p1); // -x_n
                    den = p2;           // y_n
                }
                long d1 = num.degree(), d2 = den.degree();
                Rat a = d1 >= d2 && d1 >= 0 ? num.leading() : Rat(0);
                Rat b = d2 >= d1 && d2 >= 0 ? den.leading() : Rat(0);
                predicted = sl3::l_proj(a, b);
            } else if (family == "lemma57-proj") {
                PolyQ lam = parse_poly(xn);
                bool up = lam.degree() >= 1; // the diagonal parameter grows or shrinks
                bool plus = point.empty() || point == "1:1";
                SubspaceQ repd = sl3::l_proj(Rat(1), plus ? Rat(1) : Rat(-1));
                fam.generate = [=](long n) {
                    Rat l = up ? eval_poly(lam, n) : Rat(1) / Rat(n);
                    return conjugate_subspace(diag({l, Rat(1) / (l * l), l}), repd);
                };
                predicted = sl3::predicted_limit_proj_pair(up);
            } else if (family.rfind("thm62-", 0) == 0) {
                sl4::Classification target;
                std::string tag = family.substr(6);
                if (tag == "T1") {
                    target = sl4::classify(sl4::cartan4());
                } else if (tag == "T2") {
                    Root4 d = delta == "alpha" ? Root4::Alpha
                                               : (delta == "beta" ? Root4::Beta : Root4::Gamma);
                    target = sl4::classify(sl4::t2_rep(d));
                } else if (tag == "T3" || tag == "T5") {
                    auto v = split_ratios(point, ':');
                    target = sl4::classify(tag == "T3" ? sl4::t3_rep(v.at(0), v.at(1))
                                                       : sl4::t5_rep(v.at(0), v.at(1)));
                } else if (tag == "T4") {
                    target = sl4::classify(sl4::t4_rep());
                } else if (tag == "T6") {
                    auto v = split_ratios(point, ':');
                    target = sl4::classify(sl4::l_xyz(v.at(0), v.at(1), v.at(2)));
                } else if (tag == "T7" || tag == "T8") {
                    auto v = split_ratios(pair, ',');
                    target = sl4::classify(tag == "T7" ? sl4::l_alpha_yt(v.at(0), v.at(1))
                                                       : sl4::l_gamma_yt(v.at(0), v.at(1)));
                } else if (tag == "T9") {
                    auto v = split_ratios(point, ':');
                    target = sl4::classify(sl4::l0_hyperplane(v.at(0), v.at(1), v.at(2), v.at(3)));
                } else if (tag == "T10") {
                    auto v = split_ratios(pair, ',');
                    target = sl4::classify(sl4::l_xy(v.at(0), v.at(1)));
                } else {
                    throw std::invalid_argument("unknown family: " + family);
                }
                fam = sl4::thm62_sequence(target);
                predicted = target.reconstruction;
                if (tol_opt <= 0 && tol_env <= 0) tol = 1e-3;
                schedule = {10, 100, 500, 1000};
            } else if (family == "sl2-line") {
                PolyQ pt = parse_poly(xn == "0" ? "n^2" : xn);
                MatQ h(2, 2), u(2, 2);
                h(0, 0) = 1;
                h(1, 1) = -1;
                u(0, 1) = 1;
                fam.generate = [=](long n) {
                    MatQ img = h - (2 * eval_poly(pt, n)) * u;
                    return from_spanning_set({sl_coords(img)}, 3);
                };
                predicted = from_spanning_set({sl_coords(u)}, 3);
            } else if (family == "constant-sl3") {
                fam.generate = [](long) { return sl3::cartan(); };
                predicted = sl3::cartan();
            } else {
                throw std::invalid_argument("unknown family: " + family);
            }

            auto est = limit_estimate(fam, schedule, tol);
            out = limit_result_json(fam.name, schedule, est, predicted, tol);
            if (!est.certified) exit_code = 1;
        } else if (*cmd_verify) {
            double tol = vtol > 0 ? vtol : tol_env;
            if (suite == "all") {
                json suites = json::array();
                bool all = true;
                for (const auto& name : verify::suite_names()) {
                    auto rep = verify::run_suite(name, seed_opt, tol, thm62_tag);
                    all = all && rep.all_pass;
                    suites.push_back(rep.to_json());
                }
                out = json{{"suites", suites}, {"all_pass", all}, {"seed", seed_opt}};
                exit_code = all ? 0 : 1;
            } else {
                auto rep = verify::run_suite(suite, seed_opt, tol, thm62_tag);
                out = rep.to_json();
                exit_code = rep.all_pass ? 0 : 1;
            }
        } else if (*cmd_figure) {
            Rng rng(fig_seed);
            if (which == "blownball") {
                out["strata"] = {
                    {"blown_points",
                     {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}},
                    {"disks", {"alpha", "beta", "alpha+beta"}},
                    {"identification", "each disk absorbs one antipodal pair"},
                    {"boundary_quotient", "the three circles map to the projective line"}};
                json pts = json::array();
                for (int i = 0; i < samples; ++i)
                    pts.push_back(blownball_point_json(blownball::random_point(rng)));
                out["points"] = pts;
                out["seed"] = fig_seed;
            } else {
                auto census = blownball::cell_census();
                json jc = json::object();
                for (auto [d, c] : census) jc[std::to_string(d)] = c;
                std::vector<long> degrees{blownball::circle_degree(Root3::Alpha),
                                          blownball::circle_degree(Root3::Beta),
                                          blownball::circle_degree(Root3::AlphaBeta)};
                auto pi1 = blownball::pi1_from_degrees(degrees);
                out = json{{"cells", jc},
                           {"attaching_degrees", degrees},
                           {"pi1_order", pi1 ? json(*pi1) : json("infinite")},
                           {"zero_cells", {"l[1:0]", "l[0:1]"}},
                           {"one_cells", {"orbit of l[1:1]", "orbit of l[1:-1]"}},
                           {"two_cells",
                            {"orbit of l_alpha", "orbit of l_beta", "orbit of l_alpha+beta"}},
                           {"three_cell", "orbit of the diagonal plane"}};
            }
            if (output_path != "-") {
                std::ofstream f(output_path);
                if (!f) throw std::invalid_argument("cannot write " + output_path);
                f << out.dump(2) << "\n";
                std::cout << json{{"written", output_path}}.dump() << "\n";
                return 0;
            }
        }

        std::cout << out.dump(2) << "\n";
        return exit_code;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 2;
    }
}
