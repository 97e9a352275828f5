#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "cohomolab/closedform.hpp"
#include "cohomolab/serialize.hpp"
#include "cohomolab/verify.hpp"

using namespace cohomolab;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitParse = 3;

struct InvalidInstance : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

struct Instance
{
    std::string algebra;
    Weights weights;
    TruncationSpec caps;
};

struct Outcome
{
    CohomologyReport report;
    Prediction prediction;
};

std::vector<Rational> parse_list(const std::string& text)
{
    std::vector<Rational> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');)
        out.push_back(Rational::parse(item));
    return out;
}

ModuleKind kind_of(const std::string& algebra)
{
    if (algebra == "aff1")
        return ModuleKind::classical;
    if (algebra == "aff11")
        return ModuleKind::super;
    throw ParseError("unknown algebra " + algebra);
}

AlgebraPresentation presentation(const std::string& algebra)
{
    return algebra == "aff1" ? AlgebraPresentation::aff1() : AlgebraPresentation::aff11();
}

ParitySelector parity_of(const std::string& p)
{
    if (p == "even")
        return ParitySelector::even;
    if (p == "odd")
        return ParitySelector::odd;
    if (p == "both")
        return ParitySelector::both;
    throw ParseError("parity must be even, odd or both");
}

void validate(const Instance& in)
{
    if (in.caps.max_order < 0 || in.caps.max_degree < 0)
        throw InvalidInstance("caps must be non-negative");
    if (kind_of(in.algebra) == ModuleKind::classical) {
        if (!classical_truncation_valid(in.weights, in.caps))
            throw InvalidInstance("invalid truncation: order " + std::to_string(in.caps.max_order) +
                                  " reaches delta + degree + 1 for delta = " + in.weights.delta().str());
    } else if (in.caps.max_order < minimal_window(in.weights)) {
        throw InvalidInstance("window " + std::to_string(in.caps.max_order) + " below ceil(delta) + 2 = " +
                              std::to_string(minimal_window(in.weights)));
    }
}

Outcome compute(const Instance& in, ParitySelector parity)
{
    const auto mod = realize_module(in.weights, in.caps, kind_of(in.algebra));
    H1Options opt;
    opt.parity = parity;
    return {h1(presentation(in.algebra), mod, opt), predict(in.algebra, in.weights.n(), in.weights.delta())};
}

long predicted_for(const Outcome& o, ParitySelector parity)
{
    if (parity == ParitySelector::both || !o.prediction.parity)
        return o.prediction.dim;
    const int want = parity == ParitySelector::odd ? 1 : 0;
    return *o.prediction.parity == want ? o.prediction.dim : 0;
}

Json caps_json(const Caps& c) { return {{"order", c.order}, {"degree", c.degree}}; }

Json report_json(const Instance& in, const Outcome& o, ParitySelector parity)
{
    const auto& r = o.report;
    const long predicted = predicted_for(o, parity);
    Json by_weight = Json::object();
    for (const auto& [w, d] : r.h1_by_weight)
        by_weight[w.str()] = d;
    Json j = {{"algebra", in.algebra}};
    j.update(to_json(in.weights));
    j["delta"] = in.weights.delta().str();
    j["computed_dim"] = r.dim_H1;
    j["predicted_dim"] = predicted;
    j["match"] = r.dim_H1 == predicted;
    j["dims"] = {{"Z1", r.dim_Z1}, {"B1", r.dim_B1}, {"H1", r.dim_H1}};
    j["h1_by_parity"] = {{"even", r.h1_by_parity[0]}, {"odd", r.h1_by_parity[1]}};
    j["h1_by_weight"] = std::move(by_weight);
    j["window"] = {{"C0", caps_json(r.window.c0)}, {"C1", caps_json(r.window.c1)}, {"C2", caps_json(r.window.c2)}};
    return j;
}

std::string csv_quote(const std::string& s)
{
    return s.find(',') == std::string::npos ? s : "\"" + s + "\"";
}

const char* kCsvHeader = "algebra,n,lambda,mu,delta,order,degree,window,dim_Z1,dim_B1,dim_H1,predicted,match";

std::string csv_row(const Instance& in, const Outcome& o, ParitySelector parity)
{
    std::string lambda;
    for (const auto& l : in.weights.lambda)
        lambda += (lambda.empty() ? "" : ",") + l.str();
    const bool super = kind_of(in.algebra) == ModuleKind::super;
    const long predicted = predicted_for(o, parity);
    std::ostringstream os;
    os << in.algebra << ',' << in.weights.n() << ',' << csv_quote(lambda) << ',' << in.weights.mu.str() << ','
       << in.weights.delta().str() << ',' << in.caps.max_order << ',' << in.caps.max_degree << ','
       << (super ? std::to_string(in.caps.max_order) : std::string()) << ',' << o.report.dim_Z1 << ','
       << o.report.dim_B1 << ',' << o.report.dim_H1 << ',' << predicted << ','
       << (o.report.dim_H1 == predicted ? "true" : "false");
    return os.str();
}

class Output
{
public:
    explicit Output(const std::string& path)
    {
        if (!path.empty()) {
            file_.open(path);
            if (!file_)
                throw std::runtime_error("cannot write " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

struct InstanceArgs
{
    std::string algebra = "aff1";
    int n = 1;
    std::string lambda;
    std::string mu = "0";
    int order = 3;
    int degree = 2;
    int window = -1;

    void add_to(CLI::App* cmd)
    {
        cmd->add_option("--algebra", algebra, "aff1 or aff11")->check(CLI::IsMember({"aff1", "aff11"}));
        cmd->add_option("--n", n, "number of arguments")->check(CLI::PositiveNumber);
        cmd->add_option("--lambda", lambda, "comma separated weights p/q (default all 0)");
        cmd->add_option("--mu", mu, "target weight p/q");
        cmd->add_option("--order", order, "maximal total derivative order");
        cmd->add_option("--degree", degree, "maximal polynomial degree of coefficients");
        cmd->add_option("--window", window, "window level B for aff11 (default --order)");
    }

    Instance instance() const
    {
        Instance in;
        in.algebra = algebra;
        in.weights.lambda = lambda.empty() ? std::vector<Rational>(static_cast<std::size_t>(n), Rational(0))
                                           : parse_list(lambda);
        if (in.weights.n() != n)
            throw ParseError("--lambda has " + std::to_string(in.weights.n()) + " entries, expected " +
                             std::to_string(n));
        in.weights.mu = Rational::parse(mu);
        in.caps = {algebra == "aff11" && window >= 0 ? window : order, degree};
        return in;
    }
};

int cmd_dim(const InstanceArgs& args, const std::string& parity, const std::string& format, const std::string& out)
{
    const auto in = args.instance();
    const auto p = parity_of(parity);
    validate(in);
    const auto o = compute(in, p);
    Output sink(out);
    if (format == "csv")
        sink.stream() << kCsvHeader << '\n' << csv_row(in, o, p) << '\n';
    else
        sink.stream() << report_json(in, o, p).dump(2) << '\n';
    return 0;
}

int cmd_basis(const InstanceArgs& args, const std::string& out)
{
    auto in = args.instance();
    const auto& w = in.weights;
    const auto alg = presentation(in.algebra);
    Json cochains = Json::array();
    if (in.algebra == "aff1") {
        for (const auto& a : aff1_family(w.n(), w.delta())) {
            Json c = to_json(alg, basis_cocycle_aff1(w, a));
            c["label"] = {{"alpha", a.entries()}};
            cochains.push_back(std::move(c));
        }
    } else {
        if (args.window < 0 && args.order < minimal_window(w))
            in.caps.max_order = minimal_window(w);
        validate(in);
        const auto mod = realize_module(w, in.caps, ModuleKind::super);
        for (const auto& l : aff11_family(w.n(), w.delta())) {
            Json c = to_json(alg, extend_to_theta(basis_cocycle_aff11_restricted(w, l.eps, l.alpha), mod));
            c["label"] = {{"eps", l.eps.flags()}, {"alpha", l.alpha.entries()}};
            cochains.push_back(std::move(c));
        }
    }
    Output sink(out);
    sink.stream() << cochains.dump(2) << '\n';
    if (cochains.empty()) {
        std::cerr << "note: predicted dimension is 0 for delta = " << w.delta().str() << '\n';
        return kExitInvalid;
    }
    return 0;
}

int cmd_verify(const std::string& suite)
{
    std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
    bool ok = true;
    for (const auto& name : names) {
        const auto r = run_suite(name);
        std::cout << name << ": " << r.checks << " checks, " << r.failures.size() << " failed\n";
        for (const auto& f : r.failures)
            std::cout << "  FAILED " << f << '\n';
        ok = ok && r.ok();
    }
    return ok ? 0 : kExitFailure;
}

std::vector<Instance> read_grid(const std::string& path)
{
    std::ifstream file(path);
    if (!file)
        throw ParseError("cannot read grid " + path);
    Json j;
    try {
        j = Json::parse(file);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what());
    }
    // fallback < 0 marks a required field
    auto integer = [](const Json& obj, const char* key, int fallback) {
        if (!obj.contains(key)) {
            if (fallback < 0)
                throw ParseError(std::string("missing field \"") + key + "\"");
            return fallback;
        }
        if (!obj.at(key).is_number_integer())
            throw ParseError(std::string(key) + " must be an integer");
        return obj.at(key).get<int>();
    };
    if (!j.is_object() || !j.contains("algebra") || !j.at("algebra").is_string())
        throw ParseError("grid needs an \"algebra\" string");
    const auto algebra = j.at("algebra").get<std::string>();
    kind_of(algebra);
    const int order = j.contains("order") ? integer(j, "order", -1) : -1;
    const int degree = j.contains("degree") ? integer(j, "degree", -1) : -1;
    std::vector<int> offsets;
    if (j.contains("window_offsets")) {
        if (!j.at("window_offsets").is_array())
            throw ParseError("window_offsets must be an array");
        for (const auto& x : j.at("window_offsets")) {
            if (!x.is_number_integer())
                throw ParseError("window_offsets entries must be integers");
            offsets.push_back(x.get<int>());
        }
    }
    if (!j.contains("rows") || !j.at("rows").is_array())
        throw ParseError("grid needs a \"rows\" array");

    std::vector<Instance> out;
    for (const auto& row : j.at("rows")) {
        Instance in;
        in.algebra = algebra;
        in.weights = weights_from_json(row);
        const int deg = integer(row, "degree", degree);
        if (row.contains("window") || row.contains("order") || offsets.empty()) {
            const int level = row.contains("window") ? integer(row, "window", -1) : integer(row, "order", order);
            in.caps = {level, deg};
            out.push_back(in);
        } else {
            for (int off : offsets) {
                in.caps = {static_cast<int>(in.weights.delta().ceil()) + off, deg};
                out.push_back(in);
            }
        }
    }
    return out;
}

unsigned scan_threads()
{
    const char* env = std::getenv("COHOMOLAB_THREADS");
    if (!env)
        return 1;
    const int t = std::atoi(env);
    return t > 0 ? static_cast<unsigned>(t) : 1;
}

int cmd_scan(const std::string& grid, const std::string& parity, const std::string& format, const std::string& out)
{
    const auto instances = read_grid(grid);
    const auto p = parity_of(parity);
    for (std::size_t i = 0; i < instances.size(); ++i) {
        try {
            validate(instances[i]);
        } catch (const InvalidInstance& e) {
            throw InvalidInstance("row " + std::to_string(i) + ": " + e.what());
        }
    }

    std::vector<std::optional<Outcome>> results(instances.size());
    std::vector<std::string> errors(instances.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < instances.size(); i = next++) {
            try {
                results[i] = compute(instances[i], p);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    const unsigned threads = std::min<unsigned>(scan_threads(), static_cast<unsigned>(std::max<std::size_t>(instances.size(), 1)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();
    for (std::size_t i = 0; i < instances.size(); ++i)
        if (!results[i])
            throw InvalidInstance("row " + std::to_string(i) + ": " + errors[i]);

    Output sink(out);
    if (format == "json") {
        Json rows = Json::array();
        for (std::size_t i = 0; i < instances.size(); ++i)
            rows.push_back(report_json(instances[i], *results[i], p));
        sink.stream() << rows.dump(2) << '\n';
    } else {
        sink.stream() << kCsvHeader << '\n';
        for (std::size_t i = 0; i < instances.size(); ++i)
            sink.stream() << csv_row(instances[i], *results[i], p) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact first cohomology of aff(1) and aff(1|1) with coefficients in n-ary differential operators"};
    app.require_subcommand(1);

    InstanceArgs dim_args;
    InstanceArgs basis_args;
    std::string parity = "both";
    std::string format = "json";
    std::string out;
    std::string suite = "all";
    std::string grid;

    auto* dim = app.add_subcommand("dim", "compute dim H^1 and compare with the closed form");
    dim_args.add_to(dim);
    dim->add_option("--parity", parity, "even, odd or both")->check(CLI::IsMember({"even", "odd", "both"}));
    dim->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    dim->add_option("--out", out, "output file (default stdout)");

    auto* basis = app.add_subcommand("basis", "emit the explicit cocycle basis");
    basis_args.add_to(basis);
    basis->add_option("--out", out, "output file (default stdout)");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::vector<std::string> suites = suite_names();
    suites.push_back("all");
    verify->add_option("--suite", suite, "suite name or all")->check(CLI::IsMember(suites));

    auto* scan = app.add_subcommand("scan", "run a grid of instances");
    scan->add_option("grid", grid, "grid JSON file")->required();
    scan->add_option("--parity", parity, "even, odd or both")->check(CLI::IsMember({"even", "odd", "both"}));
    scan->add_option("--format", format, "csv or json")->check(CLI::IsMember({"json", "csv"}));
    scan->add_option("--out", out, "output file (default stdout)");
    scan->callback([&] {
        if (scan->count("--format") == 0)
            format = "csv";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        if (*dim)
            return cmd_dim(dim_args, parity, format, out);
        if (*basis)
            return cmd_basis(basis_args, out);
        if (*verify)
            return cmd_verify(suite);
        return cmd_scan(grid, parity, format, out);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const InvalidInstance& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const InvalidTruncation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const WindowTooSmall& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}
