#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include "cmzv/io.hpp"
#include "cmzv/numeval.hpp"
#include "cmzv/regularization.hpp"
#include "cmzv/relations.hpp"

namespace cmzv::cli {

namespace {

const std::vector<std::string> kCommands = {"product",       "reg",         "fdt-verify", "duality-test",
                                            "dmr-check",     "dmrd-check",  "eds-dmr-check",
                                            "zhao-verify",   "polylog",     "relation-suite"};

std::string num(double x)
{
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& v)
{
    T out{};
    auto r = std::from_chars(v.data(), v.data() + v.size(), out);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size())
        throw parse_error("bad value for " + key + ": " + v);
    return out;
}

std::vector<int> parse_list(const std::string& key, const std::string& text)
{
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_number<int>(key, trim(item)));
    if (out.empty())
        throw parse_error(key + " needs a comma separated list");
    return out;
}

bool numeric_command(const CommandConfig& c)
{
    return c.subcommand == "polylog" || c.subcommand == "relation-suite" || c.subcommand == "zhao-verify" ||
           c.N > 0 || c.ring == "complex";
}

// TSV report: "#" metadata line, column names, rows. Counts FAIL rows.
class Report {
public:
    Report(std::ostream& os, const std::string& group, int degree, const std::string& ring, double tol,
           const std::vector<std::string>& columns)
        : os_(os)
    {
        os_ << "# group=" << group << " degree=" << degree << " ring=" << ring << " tol=" << num(tol) << '\n';
        row(columns);
    }
    void row(const std::vector<std::string>& cells)
    {
        for (size_t i = 0; i < cells.size(); ++i)
            os_ << (i ? "\t" : "") << cells[i];
        os_ << '\n';
    }
    void check(const std::string& name, bool passed, double residual, const std::string& detail)
    {
        failures_ += !passed;
        row({name, passed ? "PASS" : "FAIL", num(residual), detail});
    }
    int status() const { return failures_ == 0 ? 0 : 1; }

private:
    std::ostream& os_;
    int failures_ = 0;
};

const std::vector<std::string> kCheckColumns = {"check", "status", "residual", "detail"};

std::string ring_of_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    return read_series_text(in).ring;
}

template <CoefficientRing R>
TruncatedSeries<R> load_series(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    try {
        return read_series<R>(in);
    } catch (const parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
}

// ---- commands ----

template <CoefficientRing R>
int product(const CommandConfig& c, double tol, std::ostream& out)
{
    auto g = parse_group(c.group);
    if (c.args.size() != 2)
        throw parse_error("product takes two elements");
    if (c.op != "shuffle" && c.op != "harmonic" && c.op != "concat")
        throw parse_error("product needs one of --shuffle, --harmonic, --concat");
    const Alphabet fallback = c.op == "harmonic" ? Alphabet::Y : Alphabet::X;
    auto a = parse_element<R>(c.args[0], g, fallback), b = parse_element<R>(c.args[1], g, fallback);
    AlgebraElement<R> r = c.op == "shuffle" ? shuffle(a, b) : c.op == "harmonic" ? harmonic(a, b, g) : concat(a, b);
    Report rep(out, format_group(g), c.degree, ring_name<R>(), tol, {"op", "result"});
    rep.row({c.op, format_element(r, g)});
    return 0;
}

int reg(const CommandConfig& c, double tol, std::ostream& out)
{
    auto g = parse_group(c.group);
    if (c.args.size() != 1)
        throw parse_error("reg takes one element");
    auto a = parse_element<Rational>(c.args[0], g);
    Report rep(out, format_group(g), c.degree, "rational", tol, {"map", "result"});
    rep.row({"tilde_reg", format_element(tilde_reg(a), g)});
    rep.row({"bar_reg_T", format_tpoly(bar_reg_T(a), g)});
    rep.row({"bar_reg", format_element(bar_reg(a), g)});
    return 0;
}

std::vector<long> divisors_from(const CommandConfig& c, const FiniteAbelianGroup& g)
{
    if (c.d > 0)
        return {c.d};
    std::vector<long> out;
    for (long d : g.divisors_of_order())
        if (d >= 2)
            out.push_back(d);
    return out;
}

int fdt_verify(const CommandConfig& c, double tol, std::ostream& out)
{
    auto g = parse_group(c.group);
    Report rep(out, format_group(g), c.degree, "rational", tol, kCheckColumns);
    for (long d : divisors_from(c, g)) {
        const int n = power_structure(g, d).power_group.order();
        for (int h = 0; h < n; ++h) {
            auto r = fdtd1_identity_check(g, d, h);
            double m = 0.0;
            for (const auto& [w, q] : r.difference.terms())
                m = std::max(m, std::abs(q.get_d()));
            rep.check(format_tag(RelationTag::fdt1(d, h), g), r.passed(), m,
                      std::string(h == 0 ? "case=h=1" : "case=h!=1") + " difference=" + format_element(r.difference, g));
        }
    }
    return rep.status();
}

template <CoefficientRing R>
int duality_test(const CommandConfig& c, double tol, std::ostream& out)
{
    auto s = load_series<R>(c.input);
    std::string op = c.op.empty() ? (s.alphabet() == Alphabet::X ? "shuffle" : "harmonic") : c.op;
    if (op != "shuffle" && op != "harmonic")
        throw parse_error("duality-test takes --shuffle or --harmonic");
    auto r = op == "shuffle" ? shuffle_grouplike_check(s, tol) : harmonic_grouplike_check(s, tol);
    Report rep(out, format_group(s.group()), s.degree(), ring_name<R>(), tol, kCheckColumns);
    std::string detail = "pairs=" + std::to_string(r.pairs_checked);
    if (!r.worst_u.empty())
        detail += " worst=" + format_word(r.worst_u, s.alphabet(), s.group()) + "," +
                  format_word(r.worst_v, s.alphabet(), s.group());
    rep.check("grouplike(" + op + ")", r.passed, r.max_residual, detail);
    return rep.status();
}

template <CoefficientRing R>
int dmr_report(const TruncatedSeries<R>& phi, double tol, std::ostream& out)
{
    auto r = dmr_check(phi, tol);
    Report rep(out, format_group(phi.group()), phi.degree(), ring_name<R>(), tol, kCheckColumns);
    rep.check("shuffle-grouplike", r.shuffle.passed, r.shuffle.max_residual,
              "pairs=" + std::to_string(r.shuffle.pairs_checked));
    rep.check("harmonic-grouplike", r.harmonic.passed, r.harmonic.max_residual,
              "pairs=" + std::to_string(r.harmonic.pairs_checked));
    rep.check("linear-terms", r.linear_terms_vanish, r.linear_residual, "x0,x1");
    return rep.status();
}

template <CoefficientRing R>
int dmrd_report(const TruncatedSeries<R>& phi, const CommandConfig& c, double tol, std::ostream& out)
{
    std::vector<DistributionReport<R>> reps;
    if (c.d > 0)
        reps.push_back(dmrd_check(phi, power_structure(phi.group(), c.d), tol));
    else
        reps = dmrd_check_all(phi, tol);
    Report rep(out, format_group(phi.group()), phi.degree(), ring_name<R>(), tol, kCheckColumns);
    for (const auto& r : reps) {
        std::string detail = "words=" + std::to_string(r.words_checked);
        if (!r.worst.empty())
            detail += " worst=" + format_word(r.worst, Alphabet::X, power_structure(phi.group(), r.d).power_group);
        rep.check("DMRD(d=" + std::to_string(r.d) + ")", r.passed, r.max_residual, detail);
    }
    return rep.status();
}

// X series from --input, or Φ of Z_C at level N
template <class F>
int with_phi(const CommandConfig& c, F&& f)
{
    if (!c.input.empty()) {
        const std::string ring = ring_of_file(c.input);
        if (!c.ring.empty() && c.ring != ring)
            throw parse_error(c.input + " holds " + ring + " coefficients");
        if (ring == "complex")
            return f(load_series<Complex>(c.input));
        return f(load_series<Rational>(c.input));
    }
    if (c.N < 1)
        throw parse_error(c.subcommand + " needs --input or --N");
    return f(phi_from_Z(make_zc_map(c.N, c.degree, c.cutoff, c.tol.value_or(kNumericTolerance)), c.degree));
}

template <CoefficientRing R>
int eds_report(const ZMap<R>& z, const CommandConfig& c, double tol, std::ostream& out)
{
    auto r = eds_dmr_equality_check(z, c.degree, tol);
    Report rep(out, format_group(z.group()), c.degree, ring_name<R>(), tol, kCheckColumns);
    std::string detail = "words=" + std::to_string(r.words_checked);
    if (!r.worst.empty())
        detail += " worst=" + format_word(r.worst, Alphabet::Y, z.group());
    rep.check("EDS=DMR", r.passed, r.max_residual, detail);
    return rep.status();
}

int zhao_verify(const CommandConfig& c, double tol, std::ostream& out)
{
    if (c.N < 1)
        throw parse_error("zhao-verify needs --N");
    auto z = make_zc_map(c.N, 2, c.cutoff, tol);
    Report rep(out, format_group(z.group()), 2, "complex", tol, kCheckColumns);
    for (long d : divisors_from(c, z.group())) {
        auto r = zhao_check(z, d, tol);
        const std::string tag = " d=" + std::to_string(d);
        rep.check("hypothesis(i)" + tag, r.eds_holds, r.eds_residual,
                  "through degree " + std::to_string(r.hypothesis_degree));
        rep.check("hypothesis(ii)" + tag, r.finite_dist_1, r.dist_1_residual, "weight one");
        rep.check("hypothesis(iii)" + tag, r.finite_dist_2, r.dist_2_residual, "weight two");
        const auto pg = power_structure(z.group(), d).power_group;
        for (const auto& cell : r.cells)
            rep.check("cell(" + format_letter(cell.h1, Alphabet::X, pg) + "," + format_letter(cell.h2, Alphabet::X, pg) +
                          ")" + tag,
                      cell.passed, cell.residual, "lhs=" + format_tpoly(cell.lhs) + " rhs=" + format_tpoly(cell.rhs));
    }
    return rep.status();
}

int polylog(const CommandConfig& c, double tol, std::ostream& out, std::ostream& err)
{
    PolylogQuery q{c.N > 0 ? c.N : 1, parse_list("--k", c.k), parse_list("--z", c.z), c.cutoff, tol};
    auto r = polylog_numeric(q);
    Report rep(out, format_group(FiniteAbelianGroup::cyclic(q.N)), std::accumulate(q.k.begin(), q.k.end(), 0), "complex", tol,
               {"query", "value", "bound", "status"});
    if (r.low_precision)
        err << "warning: tail bound " << num(r.bound) << " exceeds tolerance\n";
    rep.row({"Li[k=" + c.k + ";z=" + c.z + "]", format_scalar(r.value), num(r.bound), r.low_precision ? "FAIL" : "PASS"});
    return r.low_precision ? 1 : 0;
}

int relation_suite(const CommandConfig& c, double tol, std::ostream& out)
{
    const int N = c.N > 0 ? c.N : 1;
    auto s = numeric_relation_suite(N, c.degree, tol, c.cutoff);
    Report rep(out, format_group(FiniteAbelianGroup::cyclic(N)), c.degree, "complex", tol,
               {"kind", "query", "value", "residual", "bound", "status"});
    for (const auto& r : s.rows)
        rep.row({r.kind, r.query, format_scalar(r.value), num(r.residual), num(r.bound), r.passed ? "PASS" : "FAIL"});
    return s.passed() ? 0 : 1;
}

} // namespace

std::string to_text(const CommandConfig& c)
{
    std::ostringstream os;
    auto kv = [&](const char* k, const std::string& v) {
        if (!v.empty())
            os << k << '=' << v << '\n';
    };
    kv("subcommand", c.subcommand);
    kv("group", c.group);
    kv("degree", std::to_string(c.degree));
    kv("ring", c.ring);
    if (c.tol)
        kv("tol", num(*c.tol));
    kv("d", std::to_string(c.d));
    kv("N", std::to_string(c.N));
    kv("k", c.k);
    kv("z", c.z);
    kv("cutoff", std::to_string(c.cutoff));
    kv("op", c.op);
    for (const auto& a : c.args)
        os << "arg=" << a << '\n';
    kv("input", c.input);
    kv("output", c.output);
    return os.str();
}

CommandConfig config_from_text(const std::string& text, CommandConfig c)
{
    std::istringstream is(text);
    std::string line;
    bool args_seen = false;
    while (std::getline(is, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw parse_error("expected key=value: " + t);
        const std::string key = trim(t.substr(0, eq)), v = trim(t.substr(eq + 1));
        if (key == "subcommand")
            c.subcommand = v;
        else if (key == "group")
            c.group = v;
        else if (key == "degree")
            c.degree = parse_number<int>(key, v);
        else if (key == "ring") {
            if (v != "rational" && v != "complex")
                throw parse_error("ring must be rational or complex");
            c.ring = v;
        } else if (key == "tol")
            c.tol = parse_number<double>(key, v);
        else if (key == "d")
            c.d = parse_number<long>(key, v);
        else if (key == "N")
            c.N = parse_number<int>(key, v);
        else if (key == "k")
            c.k = v;
        else if (key == "z")
            c.z = v;
        else if (key == "cutoff")
            c.cutoff = parse_number<long>(key, v);
        else if (key == "op")
            c.op = v;
        else if (key == "arg") {
            if (!args_seen)
                c.args.clear();
            args_seen = true;
            c.args.push_back(v);
        } else if (key == "input")
            c.input = v;
        else if (key == "output")
            c.output = v;
        else
            throw parse_error("unknown config key " + key);
    }
    return c;
}

CommandConfig parse_command(const std::vector<std::string>& args)
{
    CLI::App app{"cyclotomic double shuffle and distribution checks"};
    app.require_subcommand(1);
    CommandConfig raw;
    std::string config;
    bool sh = false, ha = false, co = false;
    struct Opts {
        CLI::App* app;
        std::map<std::string, CLI::Option*> o;
    };
    std::vector<Opts> subs;
    for (const auto& name : kCommands) {
        Opts s{app.add_subcommand(name), {}};
        auto* a = s.app;
        s.o["group"] = a->add_option("--group", raw.group, "group, e.g. Z6 or 2x4");
        s.o["degree"] = a->add_option("--degree", raw.degree, "degree or weight bound");
        s.o["ring"] = a->add_option("--ring", raw.ring, "rational or complex")->check(CLI::IsMember({"rational", "complex"}));
        s.o["tol"] = a->add_option("--tol", raw.tol, "absolute tolerance");
        s.o["config"] = a->add_option("--config", config, "key=value config file");
        s.o["d"] = a->add_option("--d", raw.d, "divisor of the group order");
        s.o["N"] = a->add_option("--N", raw.N, "level of the roots of unity");
        s.o["k"] = a->add_option("--k", raw.k, "indices, comma separated");
        s.o["z"] = a->add_option("--z", raw.z, "argument residues mod N, comma separated");
        s.o["cutoff"] = a->add_option("--cutoff", raw.cutoff, "summation cutoff");
        s.o["input"] = a->add_option("--input", raw.input, "series file");
        s.o["output"] = a->add_option("--output", raw.output, "write the report here");
        s.o["shuffle"] = a->add_flag("--shuffle", sh);
        s.o["harmonic"] = a->add_flag("--harmonic", ha);
        s.o["concat"] = a->add_flag("--concat", co);
        s.o["args"] = a->add_option("elements", raw.args, "algebra elements");
        subs.push_back(std::move(s));
    }
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);

    const Opts* chosen = nullptr;
    for (const auto& s : subs)
        if (s.app->parsed())
            chosen = &s;
    CommandConfig c;
    if (!config.empty()) {
        std::ifstream in(config);
        if (!in)
            throw parse_error("cannot open config " + config);
        std::stringstream ss;
        ss << in.rdbuf();
        try {
            c = config_from_text(ss.str(), c);
        } catch (const parse_error& e) {
            throw parse_error(config + ": " + e.what());
        }
    }
    c.subcommand = chosen->app->get_name();
    auto given = [&](const char* k) { return chosen->o.at(k)->count() > 0; };
    if (given("group"))
        c.group = raw.group;
    if (given("degree"))
        c.degree = raw.degree;
    if (given("ring"))
        c.ring = raw.ring;
    if (given("tol"))
        c.tol = raw.tol;
    if (given("d"))
        c.d = raw.d;
    if (given("N"))
        c.N = raw.N;
    if (given("k"))
        c.k = raw.k;
    if (given("z"))
        c.z = raw.z;
    if (given("cutoff"))
        c.cutoff = raw.cutoff;
    if (given("input"))
        c.input = raw.input;
    if (given("output"))
        c.output = raw.output;
    if (given("args"))
        c.args = raw.args;
    if (sh + ha + co > 1)
        throw parse_error("--shuffle, --harmonic and --concat exclude each other");
    if (sh)
        c.op = "shuffle";
    if (ha)
        c.op = "harmonic";
    if (co)
        c.op = "concat";
    return c;
}

int run(const CommandConfig& c, std::ostream& out, std::ostream& err)
{
    if (c.N > 0 && c.ring == "rational")
        throw parse_error("numeric values at level N are complex");
    const double tol = c.tol.value_or(numeric_command(c) ? kNumericTolerance : kDefaultTolerance);
    const bool cx = c.ring == "complex";
    const std::string& s = c.subcommand;
    if (s == "product")
        return cx ? product<Complex>(c, tol, out) : product<Rational>(c, tol, out);
    if (s == "reg") {
        if (cx)
            throw parse_error("reg works over the rationals");
        return reg(c, tol, out);
    }
    if (s == "fdt-verify")
        return fdt_verify(c, tol, out);
    if (s == "duality-test") {
        if (c.input.empty())
            throw parse_error("duality-test needs --input");
        return ring_of_file(c.input) == "complex" ? duality_test<Complex>(c, tol, out)
                                                   : duality_test<Rational>(c, tol, out);
    }
    if (s == "dmr-check")
        return with_phi(c, [&](const auto& phi) { return dmr_report(phi, tol, out); });
    if (s == "dmrd-check")
        return with_phi(c, [&](const auto& phi) { return dmrd_report(phi, c, tol, out); });
    if (s == "eds-dmr-check") {
        if (c.N > 0)
            return eds_report(make_zc_map(c.N, c.degree, c.cutoff, tol), c, tol, out);
        if (cx)
            throw parse_error("eds-dmr-check over the complex numbers needs --N");
        // formal Z: one prime per word
        return eds_report(make_prime_zmap(parse_group(c.group), c.degree), c, tol, out);
    }
    if (s == "zhao-verify")
        return zhao_verify(c, tol, out);
    if (s == "polylog")
        return polylog(c, tol, out, err);
    if (s == "relation-suite")
        return relation_suite(c, tol, out);
    throw parse_error("unknown subcommand " + s);
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    auto usage_text = [&] {
        std::string u = "usage: cmzv <command> [options]\ncommands:";
        for (const auto& n : kCommands)
            u += " " + n;
        return u + "\n";
    };
    CommandConfig c;
    try {
        c = parse_command(args);
    } catch (const CLI::CallForHelp&) {
        out << usage_text();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << usage_text();
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n' << usage_text();
        return 2;
    }
    try {
        // nothing reaches the report stream unless the run completes
        std::ostringstream buf;
        int status = run(c, buf, err);
        if (c.output.empty()) {
            out << buf.str();
            return status;
        }
        std::ofstream f(c.output);
        if (!(f << buf.str()))
            throw std::runtime_error("cannot write " + c.output);
        return status;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace cmzv::cli
