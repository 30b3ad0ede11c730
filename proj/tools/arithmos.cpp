// arithmos: command-line front end. Every subcommand prints one JSON document
// (schema "arithmos/1") to stdout or --out; sequences go to --csv.
// Exit codes: 0 success, 1 computation error, 2 usage error.

#include "arithmos/acceptance.hpp"
#include "arithmos/contfrac.hpp"
#include "arithmos/json_io.hpp"
#include "arithmos/lfactor.hpp"
#include "arithmos/mixmaster.hpp"
#include "arithmos/modsym.hpp"
#include "arithmos/qsm.hpp"
#include "arithmos/schottky.hpp"
#include "arithmos/transfer.hpp"

#include "CLI11.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>

using namespace arithmos;
using io::json;

namespace {

struct CommonOptions {
    std::string out;
    std::string csv;
    bool timing = false;
};

struct Output {
    io::Envelope envelope;
    std::string csv;  // empty when the command has no sequence output
    int exit_code = 0;
};

using Handler = std::function<Output()>;

// --- small helpers --------------------------------------------------------

json big(const BigInt& x) {
    if (boost::multiprecision::abs(x) < (BigInt(1) << 62)) return x.convert_to<std::int64_t>();
    return x.str();
}

json big_list(const std::vector<BigInt>& xs) {
    json out = json::array();
    for (const auto& x : xs) out.push_back(big(x));
    return out;
}

json int_matrix(const IntMatrix& m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(big(m(i, j)));
        out.push_back(row);
    }
    return out;
}

json real_matrix(const Eigen::MatrixXd& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(io::number(m(i, j)));
        out.push_back(row);
    }
    return out;
}

json complex_matrix(const Eigen::MatrixXcd& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(io::complex_json(m(i, j)));
        out.push_back(row);
    }
    return out;
}

json abelian(const AbelianGroup& g) { return json{{"free_rank", g.free_rank}, {"torsion", big_list(g.torsion)}}; }

QuadraticSurd parse_surd(const std::string& text) {
    std::vector<std::int64_t> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stoll(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw std::invalid_argument("surd must be four integers a,b,c,d for (a + b sqrt(d)) / c, got '" + text + "'");
        }
    }
    if (v.size() != 4) throw std::invalid_argument("surd must be four integers a,b,c,d for (a + b sqrt(d)) / c, got '" + text + "'");
    return QuadraticSurd(v[0], v[1], v[2], v[3]);
}

int parse_coset_label(const CosetSpace& p, const std::string& label) {
    for (int s = 0; s < p.size(); ++s)
        if (p.label(s) == label) return s;
    throw std::invalid_argument("unknown coset label '" + label + "' (use 0, 1 or inf)");
}

// shortest text that reads back to the same doubles
std::string shortest(double x) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

std::string complex_text(io::cplx z) {
    if (z.imag() == 0.0) return shortest(z.real());
    return shortest(z.real()) + (std::signbit(z.imag()) ? "-" : "+") + shortest(std::abs(z.imag())) + "i";
}

// --- subcommands ------------------------------------------------------------

void add_transfer(CLI::App& app, Handler& handler) {
    auto* transfer_cmd = app.add_subcommand("transfer", "transfer operator spectra");
    transfer_cmd->require_subcommand(1);
    auto* eig = transfer_cmd->add_subcommand("eig", "leading eigenvalues of the transfer operator");
    auto sigma = std::make_shared<std::string>("1");
    auto variant = std::make_shared<std::string>("full");
    auto level = std::make_shared<int>(2), digits = std::make_shared<int>(2), dim = std::make_shared<int>(24);
    auto x0 = std::make_shared<double>(transfer::default_x0);
    auto count = std::make_shared<int>(5);
    eig->add_option("--sigma", *sigma, "complex exponent")->capture_default_str();
    eig->add_option("--variant", *variant, "full | coset | hensley")
        ->check(CLI::IsMember({"full", "coset", "hensley"}))
        ->capture_default_str();
    eig->add_option("--level", *level, "coset variant: modulus N")->capture_default_str();
    eig->add_option("--digit-bound", *digits, "hensley variant: digits 1..D")->capture_default_str();
    eig->add_option("--dim", *dim, "basis size per block")->capture_default_str();
    eig->add_option("--x0", *x0, "Taylor expansion point")->capture_default_str();
    eig->add_option("--count", *count, "number of eigenvalues to report")->capture_default_str();
    eig->callback([=, &handler] {
        handler = [=] {
            transfer::TransferSpec spec;
            spec.sigma = io::parse_complex(*sigma);
            spec.variant = *variant == "full" ? transfer::Variant::full
                           : *variant == "coset" ? transfer::Variant::coset
                                                 : transfer::Variant::hensley;
            spec.level = *level;
            spec.digit_bound = *digits;
            spec.dim = *dim;
            spec.x0 = *x0;
            const auto sp = transfer::top_eigen(transfer::build_matrix(spec));
            transfer::TransferSpec finer = spec;
            finer.dim = std::min(spec.dim + 8, transfer::max_dim);
            if (finer.dim == spec.dim) finer.dim = spec.dim - 8;
            const auto ref = transfer::top_eigen(transfer::build_matrix(finer));
            Output o;
            o.envelope.command = "transfer eig";
            o.envelope.parameters = {{"sigma", complex_text(spec.sigma)}, {"variant", *variant}, {"level", *level},
                                     {"digit_bound", *digits}, {"dim", *dim}, {"x0", *x0}};
            std::vector<io::cplx> top(sp.eigenvalues.begin(),
                                      sp.eigenvalues.begin() + std::min<std::size_t>(*count, sp.eigenvalues.size()));
            o.envelope.result = {{"spec", spec.describe()},
                                 {"leading_eigenvalue", io::complex_json(sp.eigenvalues[0])},
                                 {"gap", sp.gap},
                                 {"gap_warning", sp.gap_warning},
                                 {"eigenvalues", io::complex_list(top)}};
            o.envelope.error_estimate = std::abs(sp.eigenvalues[0] - ref.eigenvalues[0]);
            std::ostringstream csv;
            csv.precision(17);
            csv << "index,re,im,modulus\n";
            for (std::size_t i = 0; i < sp.eigenvalues.size(); ++i)
                csv << i << "," << sp.eigenvalues[i].real() << "," << sp.eigenvalues[i].imag() << ","
                    << std::abs(sp.eigenvalues[i]) << "\n";
            o.csv = csv.str();
            return o;
        };
    });
}

void add_selberg(CLI::App& app, Handler& handler) {
    auto* cmd = app.add_subcommand("selberg", "Selberg zeta function as det(1 - L_s)");
    auto s = std::make_shared<std::string>();
    auto group = std::make_shared<std::string>("pgl2z");
    auto dim = std::make_shared<int>(24), level = std::make_shared<int>(2);
    cmd->add_option("--s", *s, "complex argument, Re(2s) > 1")->required();
    cmd->add_option("--group", *group, "pgl2z | sl2z | coset")->check(CLI::IsMember({"pgl2z", "sl2z", "coset"}))->capture_default_str();
    cmd->add_option("--dim", *dim, "basis size per block")->capture_default_str();
    cmd->add_option("--level", *level, "coset modulus")->capture_default_str();
    cmd->callback([=, &handler] {
        handler = [=] {
            const auto sv = io::parse_complex(*s);
            const auto g = *group == "pgl2z" ? transfer::Group::pgl2z
                           : *group == "sl2z" ? transfer::Group::sl2z
                                              : transfer::Group::coset;
            const auto z = transfer::selberg_zeta(sv, g, *dim, *level);
            Output o;
            o.envelope.command = "selberg";
            o.envelope.parameters = {{"s", complex_text(sv)}, {"group", *group}, {"dim", *dim}, {"level", *level}};
            o.envelope.result = {{"value", io::complex_json(z.value)},
                                 {"value_refined", io::complex_json(z.value_refined)},
                                 {"eigen_product", io::complex_json(z.eigen_product)}};
            o.envelope.error_estimate = z.stability;
            return o;
        };
    });
}

void add_hensley(CLI::App& app, Handler& handler) {
    auto* cmd = app.add_subcommand("hensley-dim", "Hausdorff dimension of bounded-digit continued fractions");
    auto digits = std::make_shared<int>();
    auto dim = std::make_shared<int>(24);
    auto tol = std::make_shared<double>(1e-10);
    cmd->add_option("--digits", *digits, "digit bound N")->required();
    cmd->add_option("--dim", *dim, "basis size")->capture_default_str();
    cmd->add_option("--tol", *tol, "root bracket tolerance")->capture_default_str();
    cmd->callback([=, &handler] {
        handler = [=] {
            const auto d = transfer::hensley_dimension(*digits, *dim, *tol);
            const int other = *dim + 8 <= transfer::max_dim ? *dim + 8 : *dim - 8;
            const auto r = transfer::hensley_dimension(*digits, other, *tol);
            Output o;
            o.envelope.command = "hensley-dim";
            o.envelope.parameters = {{"digits", *digits}, {"dim", *dim}, {"tol", *tol}};
            o.envelope.result = {{"dimension", d.value}, {"iterations", d.iterations}, {"bracket_width", d.bracket_width},
                                 {"dimension_refined", r.value}};
            o.envelope.error_estimate = std::max(d.bracket_width, std::abs(d.value - r.value));
            return o;
        };
    });
}

void add_limsym(CLI::App& app, Handler& handler) {
    auto* cmd = app.add_subcommand("limsym", "limiting modular symbol of a quadratic irrational");
    auto surd = std::make_shared<std::string>();
    auto level = std::make_shared<int>(2);
    auto iters = std::make_shared<std::uint64_t>(100000);
    cmd->add_option("--surd", *surd, "a,b,c,d for (a + b sqrt(d)) / c")->required();
    cmd->add_option("--level", *level, "level N of Gamma_0(N)")->capture_default_str();
    cmd->add_option("--iters", *iters, "shift steps in the ergodic average")->capture_default_str();
    cmd->callback([=, &handler] {
        handler = [=] {
            const auto beta = parse_surd(*surd);
            const CosetSpace p(*level);
            const auto c = modsym::limiting_symbol_closed(beta, p);
            const auto e = modsym::limiting_symbol_ergodic(beta, p, *iters);
            const auto cv = c.symbol.values(), ev = e.values();
            double dev = 0.0;
            for (std::size_t i = 0; i < cv.size(); ++i) dev = std::max(dev, std::abs(cv[i] - ev[i]));
            json labels = json::array();
            for (int s = 0; s < p.size(); ++s) labels.push_back(p.label(s));
            Output o;
            o.envelope.command = "limsym";
            o.envelope.parameters = {{"surd", *surd}, {"level", *level}, {"iters", *iters}};
            o.envelope.result = {{"cosets", labels},
                                 {"closed_form", cv},
                                 {"closed_counts", big_list(c.symbol.counts)},
                                 {"lyapunov", c.symbol.lyapunov},
                                 {"orbit_period", c.ell},
                                 {"digit_period", c.digit_period},
                                 {"log_eigenvalue", c.log_eigenvalue},
                                 {"antisymmetric_in_kernel", c.antisymmetric_in_kernel},
                                 {"ergodic", ev},
                                 {"ergodic_matches_exactly", e.same_rational_part(c.symbol)},
                                 {"max_deviation", dev}};
            o.envelope.error_estimate = dev;
            std::ostringstream csv;
            csv.precision(17);
            csv << "coset,closed_form,ergodic\n";
            for (int s = 0; s < p.size(); ++s) csv << p.label(s) << "," << cv[s] << "," << ev[s] << "\n";
            o.csv = csv.str();
            return o;
        };
    });
}

void add_homology(CLI::App& app, Handler& handler) {
    auto* cmd = app.add_subcommand("homology", "relative homology of X_0(N) from Manin symbols");
    auto level = std::make_shared<int>();
    cmd->add_option("--level", *level, "level N")->required();
    cmd->callback([=, &handler] {
        handler = [=] {
            const CosetSpace p(*level);
            const auto h = modsym::homology_presentation(p);
            json kernel = json::array();
            for (const auto& v : h.kernel) kernel.push_back(big_list(v));
            Output o;
            o.envelope.command = "homology";
            o.envelope.parameters = {{"level", *level}};
            o.envelope.result = {{"points", h.points},
                                 {"orbits_sigma", h.orbits_i},
                                 {"orbits_tau", h.orbits_r},
                                 {"kernel_rank", h.kernel.size()},
                                 {"expected_rank", h.expected_rank},
                                 {"kernel", kernel},
                                 {"cokernel_sigma", abelian(h.cokernel_i)},
                                 {"cokernel_tau", abelian(h.cokernel_r)},
                                 {"cokernel_both", abelian(h.cokernel_both)},
                                 {"torsion_free", h.torsion_free}};
            return o;
        };
    });
}

void add_mixmaster(CLI::App& app, Handler& handler) {
    auto* mm = app.add_subcommand("mixmaster", "discrete mixmaster dynamics");
    mm->require_subcommand(1);

    auto* run = mm->add_subcommand("run", "evolve eras from an exact quadratic start");
    auto x0 = std::make_shared<std::string>();
    auto s0 = std::make_shared<std::string>("0");
    auto eras = std::make_shared<std::size_t>(50);
    auto track_v = std::make_shared<bool>(false);
    auto v0 = std::make_shared<double>(1.0);
    run->add_option("--x0", *x0, "a,b,c,d for x0 = (a + b sqrt(d)) / c in (0,1)")->required();
    run->add_option("--s0", *s0, "starting axis label: 0, 1 or inf")->capture_default_str();
    run->add_option("--eras", *eras, "number of eras")->capture_default_str();
    run->add_flag("--track-v", *track_v, "track the amplitude parameter v");
    run->add_option("--v0", *v0, "initial amplitude")->capture_default_str();
    run->callback([=, &handler] {
        handler = [=] {
            const CosetSpace p(2);
            const auto t = mixmaster::evolve(parse_surd(*x0), parse_coset_label(p, *s0), *eras, {*track_v, *v0});
            json list = json::array();
            double umax = 0.0;
            for (const auto& e : t.eras) {
                json row = {{"era", e.index},          {"k", e.k},
                            {"u", e.u},                {"axis_label", p.label(e.coset)},
                            {"axis", std::string(1, e.axis)}, {"p", {e.exponents.p1, e.exponents.p2, e.exponents.p3}}};
                if (e.v) row["v"] = *e.v;
                list.push_back(row);
                umax = std::max(umax, e.u);
            }
            Output o;
            o.envelope.command = "mixmaster run";
            o.envelope.parameters = {{"x0", *x0}, {"s0", *s0}, {"eras", *eras}, {"track_v", *track_v}, {"v0", *v0}};
            o.envelope.result = {{"eras", list}, {"truncated", t.truncated}};
            // digits and labels are exact; u is an exact surd rounded once
            o.envelope.error_estimate = umax * std::numeric_limits<double>::epsilon();
            o.csv = mixmaster::trajectory_csv(t);
            return o;
        };
    });

    auto* markov = mm->add_subcommand("markov", "Markov matrix of the shift on digits and axis labels");
    auto digits = std::make_shared<int>(2);
    markov->add_option("--digits", *digits, "largest digit")->capture_default_str();
    markov->callback([=, &handler] {
        handler = [=] {
            const auto m = mixmaster::markov_matrix(*digits);
            const auto kt = mixmaster::ck_ktheory(m.entries);
            Output o;
            o.envelope.command = "mixmaster markov";
            o.envelope.parameters = {{"digits", *digits}};
            o.envelope.result = {{"matrix", int_matrix(m.entries)},
                                 {"even_block", int_matrix(m.block(1, 2 <= *digits ? 2 : 1))},
                                 {"odd_block", int_matrix(m.block(1, 1))},
                                 {"k0", abelian(kt.k0)},
                                 {"k1_rank", kt.k1_rank}};
            return o;
        };
    });

    auto* stats = mm->add_subcommand("stats", "axis frequencies over Gauss-measure samples");
    auto samples = std::make_shared<std::uint64_t>(1000000);
    auto per = std::make_shared<std::uint64_t>(1000);
    auto seed = std::make_shared<std::uint64_t>(0);
    stats->add_option("--samples", *samples, "total era steps")->capture_default_str();
    stats->add_option("--eras-per-start", *per, "era steps per sampled starting point")->capture_default_str();
    stats->add_option("--seed", *seed, "random seed")->capture_default_str();
    stats->callback([=, &handler] {
        handler = [=] {
            if (*per == 0) throw std::invalid_argument("--eras-per-start must be positive");
            const std::uint64_t starts = (*samples + *per - 1) / *per;
            const auto st = mixmaster::axis_statistics(starts, *per, *seed);
            Output o;
            o.envelope.command = "mixmaster stats";
            o.envelope.parameters = {{"samples", *samples}, {"eras_per_start", *per}};
            o.envelope.seed = *seed;
            o.envelope.result = {{"steps", st.steps},
                                 {"frequency", {{"x", st.frequency[0]}, {"y", st.frequency[1]}, {"z", st.frequency[2]}}},
                                 {"counts", {{"x", st.counts[0]}, {"y", st.counts[1]}, {"z", st.counts[2]}}},
                                 {"binomial_sigma", st.binomial_sigma},
                                 {"batch_sigma", st.batch_sigma}};
            o.envelope.error_estimate = st.binomial_sigma;
            return o;
        };
    });
}

void add_green(CLI::App& app, Handler& handler) {
    auto* cmd = app.add_subcommand("green", "Green function of a Schottky uniformized curve");
    auto group = std::make_shared<std::string>();
    auto a = std::make_shared<std::string>(), b = std::make_shared<std::string>();
    auto maxlen = std::make_shared<int>(10);
    auto tol = std::make_shared<double>(1e-8);
    auto geodesic = std::make_shared<bool>(false);
    cmd->add_option("--group", *group, "group file (JSON)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--A", *a, "divisor (a) - (b) as 'a;b'")->required();
    cmd->add_option("--B", *b, "divisor (c) - (d) as 'c;d'")->required();
    cmd->add_option("--maxlen", *maxlen, "word-length cap")->capture_default_str();
    cmd->add_option("--tol", *tol, "largest acceptable truncation tail")->capture_default_str();
    cmd->add_flag("--geodesic", *geodesic, "assemble from oriented geodesic distances");
    cmd->callback([=, &handler] {
        handler = [=] {
            const auto g = io::load_group_file(*group);
            schottky::GreenOptions opt;
            opt.max_length = *maxlen;
            const auto A = io::parse_point_pair(*a), B = io::parse_point_pair(*b);
            const auto r = *geodesic ? schottky::green_geodesic(g, A, B, opt) : schottky::green_function(g, A, B, opt);
            if (!(r.tail <= *tol))
                throw std::runtime_error("truncation tail " + std::to_string(r.tail) + " exceeds --tol " +
                                         std::to_string(*tol) + "; raise --maxlen");
            Output o;
            o.envelope.command = "green";
            o.envelope.parameters = {{"group", *group}, {"A", *a}, {"B", *b}, {"maxlen", *maxlen}, {"tol", *tol},
                                     {"geodesic", *geodesic}};
            json x = json::array();
            for (Eigen::Index i = 0; i < r.x.size(); ++i) x.push_back(r.x[i]);
            o.envelope.result = {{"value", io::number(r.value)},
                                 {"genus", g.genus()},
                                 {"x", x},
                                 {"re_tau", real_matrix(r.re_tau)},
                                 {"orbit_series", {{"ratio", r.orbit_series.ratio}, {"terms", r.orbit_series.terms}}}};
            o.envelope.error_estimate = r.tail;
            return o;
        };
    });
}

void add_btz(CLI::App& app, Handler& handler) {
    auto* cmd = app.add_subcommand("btz", "closed-form genus-one Green function");
    auto q = std::make_shared<std::string>(), z = std::make_shared<std::string>();
    auto extended = std::make_shared<bool>(false);
    cmd->add_option("--q", *q, "multiplier, 0 < |q| < 1")->required();
    cmd->add_option("--z", *z, "point, |q| < |z| <= 1 unless --extended")->required();
    cmd->add_flag("--extended", *extended, "reduce z into the fundamental annulus first");
    cmd->callback([=, &handler] {
        handler = [=] {
            const auto qv = io::parse_complex(*q), zv = io::parse_complex(*z);
            const double v = *extended ? schottky::btz_green_extended(qv, zv) : schottky::btz_green(qv, zv);
            Output o;
            o.envelope.command = "btz";
            o.envelope.parameters = {{"q", complex_text(qv)}, {"z", complex_text(zv)}, {"extended", *extended}};
            o.envelope.result = {{"value", io::number(v)}};
            // omitted factors are below 1e-17 each and shrink geometrically; the rest is rounding
            const double terms = std::log(1e-17) / std::log(std::abs(qv));
            if (std::isfinite(v))
                o.envelope.error_estimate =
                    2e-17 / (1 - std::abs(qv)) + 4 * terms * std::numeric_limits<double>::epsilon() * (1 + std::abs(v));
            else
                o.envelope.error_estimate = "exact";
            return o;
        };
    });
}

void add_limitset(CLI::App& app, Handler& handler, CommonOptions& common) {
    auto* cmd = app.add_subcommand("limitset", "attracting fixed points of reduced words");
    auto group = std::make_shared<std::string>();
    auto depth = std::make_shared<int>(8);
    cmd->add_option("--group", *group, "group file (JSON)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--depth", *depth, "word length")->capture_default_str();
    cmd->callback([=, &handler, &common] {
        // --out names the point cloud here when it ends in .csv
        if (common.out.size() > 4 && common.out.substr(common.out.size() - 4) == ".csv" && common.csv.empty()) {
            common.csv = common.out;
            common.out.clear();
        }
        handler = [=] {
            const auto g = io::load_group_file(*group);
            const auto pts = schottky::limit_points(g, *depth);
            std::ostringstream csv;
            csv.precision(17);
            csv << "re,im\n";
            for (const auto& z : pts) csv << z.real() << "," << z.imag() << "\n";
            Output o;
            o.envelope.command = "limitset";
            o.envelope.parameters = {{"group", *group}, {"depth", *depth}};
            double rmax = 0.0;
            for (const auto& z : pts) rmax = std::max(rmax, std::abs(z));
            o.envelope.result = {{"points", pts.size()}, {"max_modulus", rmax}};
            o.envelope.error_estimate = 0.0;
            o.csv = csv.str();
            return o;
        };
    });
}

void add_solenoid(CLI::App& app, Handler& handler) {
    auto* cmd = app.add_subcommand("solenoid", "solenoid cohomology ranks and Dirac spectrum counts");
    auto genus = std::make_shared<int>(2), nmax = std::make_shared<int>(3);
    auto budget = std::make_shared<std::uint64_t>(2000);
    auto t = std::make_shared<double>(1.0);
    cmd->add_option("--genus", *genus, "genus g >= 2")->capture_default_str();
    cmd->add_option("--nmax", *nmax, "largest filtration index")->capture_default_str();
    cmd->add_option("--budget", *budget, "largest state count for the Smith normal form check")->capture_default_str();
    cmd->add_option("--t", *t, "heat parameter for the theta trace")->capture_default_str();
    cmd->callback([=, &handler] {
        handler = [=] {
            const auto r = schottky::solenoid_ranks(*genus, *nmax, *budget);
            const auto d = schottky::dirac_spectrum(*genus, *nmax, *t, {});
            json expl = json::array();
            for (const auto& e : r.explicit_rank) expl.push_back(e ? json(*e) : json(nullptr));
            Output o;
            o.envelope.command = "solenoid";
            o.envelope.parameters = {{"genus", *genus}, {"nmax", *nmax}, {"budget", *budget}, {"t", *t}};
            o.envelope.result = {{"formula", r.formula},
                                 {"explicit_rank", expl},
                                 {"formula_only", r.formula_only},
                                 {"dirac_multiplicity", d.multiplicity},
                                 {"theta_partial", d.theta_partial},
                                 {"theta_tail_bound", io::number(d.theta_tail_bound)}};
            o.envelope.error_estimate = "exact";
            std::ostringstream csv;
            csv << "n,formula,explicit_rank,dirac_multiplicity\n";
            for (int n = 0; n <= *nmax; ++n)
                csv << n << "," << r.formula[n] << "," << (r.explicit_rank[n] ? std::to_string(*r.explicit_rank[n]) : "")
                    << "," << d.multiplicity[n] << "\n";
            o.csv = csv.str();
            return o;
        };
    });
}

lfactor::HodgeData parse_hodge(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("--hodge is not valid JSON: ") + e.what());
    }
    lfactor::HodgeData h;
    h.weight = j.at("m").get<int>();
    for (const auto& [key, value] : j.at("h").items()) {
        const auto comma = key.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("--hodge: keys must be 'p,q', got '" + key + "'");
        h.h[{std::stoi(key.substr(0, comma)), std::stoi(key.substr(comma + 1))}] = value.get<int>();
    }
    const std::string emb = j.value("embedding", "complex");
    if (emb != "real" && emb != "complex") throw std::invalid_argument("--hodge: embedding must be real or complex");
    h.embedding = emb == "real" ? lfactor::Embedding::real : lfactor::Embedding::complex;
    if (j.contains("hpm"))
        for (const auto& [key, value] : j.at("hpm").items()) h.h_pm[std::stoi(key)] = {value.at(0).get<int>(), value.at(1).get<int>()};
    return h;
}

void add_lfactor(CLI::App& app, Handler& handler) {
    auto* cmd = app.add_subcommand("lfactor", "archimedean L-factor from Hodge data");
    auto hodge = std::make_shared<std::string>(), s = std::make_shared<std::string>();
    cmd->add_option("--hodge", *hodge, R"(e.g. '{"m":1,"h":{"1,0":2,"0,1":2}}', optional "embedding":"real" and "hpm":{"p":[h+,h-]})")
        ->required();
    cmd->add_option("--s", *s, "complex argument")->required();
    cmd->callback([=, &handler] {
        handler = [=] {
            const auto h = parse_hodge(*hodge);
            const auto sv = io::parse_complex(*s);
            const auto v = lfactor::hodge_lfactor(h, sv);
            Output o;
            o.envelope.command = "lfactor";
            o.envelope.parameters = {{"hodge", json::parse(*hodge)}, {"s", complex_text(sv)}};
            o.envelope.result = {{"value", io::complex_json(v)}, {"dimension", h.dimension()}};
            // Lanczos gamma: about 1e-15 relative per factor
            o.envelope.error_estimate = 1e-14 * std::max(1, h.dimension()) * std::abs(v);
            return o;
        };
    });
}

void add_regdet(CLI::App& app, Handler& handler) {
    auto* cmd = app.add_subcommand("regdet-check", "Gamma_C(s)^{2g} against the regularized determinant");
    auto genus = std::make_shared<int>();
    auto s = std::make_shared<std::string>();
    cmd->add_option("--genus", *genus, "genus g >= 0")->required();
    cmd->add_option("--s", *s, "complex argument")->required();
    cmd->callback([=, &handler] {
        handler = [=] {
            const auto sv = io::parse_complex(*s);
            const auto r = lfactor::verify_regdet_identity(*genus, sv);
            Output o;
            o.envelope.command = "regdet-check";
            o.envelope.parameters = {{"genus", *genus}, {"s", complex_text(sv)}};
            o.envelope.result = {{"lhs", io::complex_json(r.lhs)},
                                 {"rhs", io::complex_json(r.rhs)},
                                 {"rhs_euler_maclaurin", io::complex_json(r.rhs_summed)},
                                 {"relative_error", r.relative_error},
                                 {"continuation_gap", r.continuation_gap}};
            o.envelope.error_estimate = r.relative_error;
            return o;
        };
    });
}

void add_bc_state(CLI::App& app, Handler& handler) {
    auto* cmd = app.add_subcommand("bc-state", "low-temperature KMS state on a phase operator");
    auto a = std::make_shared<std::int64_t>(), b = std::make_shared<std::int64_t>();
    auto beta = std::make_shared<double>();
    auto alpha = std::make_shared<std::int64_t>(1);
    auto K = std::make_shared<std::uint64_t>(1000000);
    auto average = std::make_shared<bool>(false);
    cmd->add_option("--a", *a, "numerator of r = a/b")->required();
    cmd->add_option("--b", *b, "denominator of r = a/b")->required();
    cmd->add_option("--beta", *beta, "inverse temperature > 1")->required();
    cmd->add_option("--alpha", *alpha, "unit mod b")->capture_default_str();
    cmd->add_option("--K", *K, "truncation")->capture_default_str();
    cmd->add_flag("--average", *average, "also average over all units and compare with the product formula");
    cmd->callback([=, &handler] {
        handler = [=] {
            const auto v = qsm::bc_kms_value({*beta, *alpha, *a, *b, *K});
            Output o;
            o.envelope.command = "bc-state";
            o.envelope.parameters = {{"a", *a}, {"b", *b}, {"beta", *beta}, {"alpha", *alpha}, {"K", *K}, {"average", *average}};
            o.envelope.result = {{"value", io::complex_json(v.value)},
                                 {"hurwitz_value", io::complex_json(v.hurwitz_value)},
                                 {"tail_bound", v.tail_bound}};
            double err = v.tail_bound;
            if (*average) {
                const auto r = qsm::bc_low_temperature_identity(*a, *b, *beta, *K);
                o.envelope.result["average"] = {{"lhs", io::complex_json(r.lhs)},
                                                {"rhs", r.rhs},
                                                {"divisor_form", r.divisor_form},
                                                {"difference", r.difference},
                                                {"tail_bound", r.tail_bound}};
                err = std::max(err, r.tail_bound);
            }
            o.envelope.error_estimate = v.value == io::cplx(1.0) && *b == 1 ? json("exact") : json(err);
            return o;
        };
    });
}

void add_gl2(CLI::App& app, Handler& handler) {
    auto* cmd = app.add_subcommand("gl2-partition", "sum of sigma(k) k^-beta against zeta(beta) zeta(beta-1)");
    auto beta = std::make_shared<double>();
    auto K = std::make_shared<std::uint64_t>(100000);
    cmd->add_option("--beta", *beta, "inverse temperature > 2")->required();
    cmd->add_option("--K", *K, "truncation")->capture_default_str();
    cmd->callback([=, &handler] {
        handler = [=] {
            const auto r = qsm::gl2_partition(*beta, *K);
            const auto bc = qsm::bc_partition(*beta, *K);
            Output o;
            o.envelope.command = "gl2-partition";
            o.envelope.parameters = {{"beta", *beta}, {"K", *K}};
            o.envelope.result = {{"value", r.value},
                                 {"tail_bound", r.tail_bound},
                                 {"zeta_product", r.zeta_product},
                                 {"difference", r.difference},
                                 {"combined_tail", r.combined_tail},
                                 {"bc_partition", {{"value", bc.value}, {"tail_bound", bc.tail_bound}, {"zeta", bc.zeta}}}};
            o.envelope.error_estimate = r.combined_tail;
            return o;
        };
    });
}

void add_verify(CLI::App& app, Handler& handler, CommonOptions& common) {
    auto* cmd = app.add_subcommand("verify", "run the acceptance criteria");
    auto profile = std::make_shared<std::string>("quick");
    cmd->add_option("--profile", *profile, "quick | full")->check(CLI::IsMember({"quick", "full"}))->capture_default_str();
    cmd->callback([=, &handler, &common] {
        handler = [=, &common] {
            const auto results =
                acceptance::run_all(*profile == "full" ? acceptance::Profile::full : acceptance::Profile::quick);
            json list = json::array();
            int passed = 0;
            for (const auto& r : results) {
                json row = {{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"measured", r.measured}};
                if (common.timing) row["seconds"] = r.seconds;
                list.push_back(row);
                passed += r.pass;
                std::cerr << acceptance::format_line(r, common.timing) << "\n";
            }
            Output o;
            o.envelope.command = "verify";
            o.envelope.parameters = {{"profile", *profile}};
            o.envelope.result = {{"criteria", list}, {"passed", passed}, {"total", results.size()}};
            o.envelope.error_estimate = "exact";
            o.exit_code = passed == static_cast<int>(results.size()) ? 0 : 1;
            return o;
        };
    });
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    f << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"arithmos: numerical companion for arithmetic geometry and noncommutative dynamics"};
    app.set_version_flag("--version", std::string(io::library_version));
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key=value file with default option values; flags override it");
    app.config_formatter(std::make_shared<CLI::ConfigINI>());

    CommonOptions common;
    app.add_option("--out", common.out, "write the JSON result to this file instead of stdout");
    app.add_option("--csv", common.csv, "write sequence output as CSV");
    app.add_flag("--timing", common.timing, "include wall_time in the output");

    Handler handler;
    add_transfer(app, handler);
    add_selberg(app, handler);
    add_hensley(app, handler);
    add_limsym(app, handler);
    add_homology(app, handler);
    add_mixmaster(app, handler);
    add_green(app, handler);
    add_btz(app, handler);
    add_limitset(app, handler, common);
    add_solenoid(app, handler);
    add_lfactor(app, handler);
    add_regdet(app, handler);
    add_bc_state(app, handler);
    add_gl2(app, handler);
    add_verify(app, handler, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cout << io::error_json("usage", e.what()).dump() << std::endl;
        app.exit(e, std::cerr, std::cerr);
        return 2;
    }

    std::string command = "unknown";
    for (const auto* sub : app.get_subcommands()) {
        command = sub->get_name();
        for (const auto* inner : sub->get_subcommands()) command += " " + inner->get_name();
    }
    try {
        const auto start = std::chrono::steady_clock::now();
        Output o = handler();
        if (common.timing) o.envelope.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const std::string text = io::to_json(o.envelope).dump(2) + "\n";
        if (!common.csv.empty()) {
            if (o.csv.empty()) throw std::runtime_error("'" + command + "' produces no sequence output for --csv");
            write_file(common.csv, o.csv);
        }
        if (common.out.empty()) std::cout << text;
        else write_file(common.out, text);
        return o.exit_code;
    } catch (const std::exception& e) {
        std::cout << io::error_json(command, e.what()).dump() << std::endl;
        return 1;
    }
}
