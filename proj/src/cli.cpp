#include "emalg/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"

#include "emalg/braided.hpp"
#include "emalg/io.hpp"
#include "emalg/limits.hpp"
#include "emalg/models/conjugated.hpp"
#include "emalg/models/euclidean.hpp"
#include "emalg/models/heisenberg.hpp"
#include "emalg/pansu.hpp"

namespace emalg {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitFormat = 4;

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

using AnyModel = std::variant<EuclideanModel, HeisenbergModel, ConjugatedModel>;

AnyModel make_model(const std::string& name) {
    if (name == "heisenberg") return HeisenbergModel{};
    if (name == "conjugated" || name == "conjugated:default") return ConjugatedModel::quadratic();
    if (name == "euclidean") return EuclideanModel(2);
    if (name.rfind("euclidean:", 0) == 0) {
        const std::string dim = name.substr(10);
        char* end = nullptr;
        const long k = std::strtol(dim.c_str(), &end, 10);
        if (dim.empty() || *end != '\0' || k < 1 || k > 16)
            throw UsageError("bad euclidean dimension in \"" + name + "\" (want 1..16)");
        return EuclideanModel(static_cast<int>(k));
    }
    throw UsageError("unknown model \"" + name + "\"");
}

Schedule make_schedule(const ExperimentConfig& cfg) {
    try {
        return Schedule::dyadic(cfg.sched_first, cfg.sched_last);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

nlohmann::json config_json(const ExperimentConfig& cfg) {
    nlohmann::json j;
    j["command"] = cfg.command;
    j["model"] = cfg.model;
    j["table"] = cfg.table_path;
    j["n"] = cfg.n;
    j["check"] = cfg.check;
    j["map"] = cfg.map;
    j["seed"] = cfg.seed;
    j["samples"] = cfg.samples;
    j["jobs"] = cfg.jobs;
    j["schedule_first"] = cfg.sched_first;
    j["schedule_last"] = cfg.sched_last;
    j["format"] = cfg.format;
    j["out"] = cfg.out;
    j["tolerance"] = cfg.tolerance;
    j["tol_tangent"] = cfg.tol_tangent;
    return j;
}

std::string config_echo(const ExperimentConfig& cfg) {
    std::string s;
    const nlohmann::json j = config_json(cfg);
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!s.empty()) s += ' ';
        s += it.key();
        s += '=';
        s += it->is_string() ? it->get<std::string>() : it->dump();
    }
    return s;
}

void emit_report(const ExperimentConfig& cfg, const std::string& csv_body,
                 const nlohmann::json& result) {
    std::string text;
    if (cfg.format == "json") {
        nlohmann::json j;
        j["config"] = config_json(cfg);
        j["result"] = result;
        text = j.dump(2) + "\n";
    } else {
        std::fprintf(stderr, "config: %s\n", config_echo(cfg).c_str());
        text = csv_body;
    }
    if (cfg.out.empty())
        std::fputs(text.c_str(), stdout);
    else
        write_text_file(cfg.out, text);
}

void emit_audit(const ExperimentConfig& cfg, const AuditReport& rep) {
    emit_report(cfg, audit_csv(rep), nlohmann::json::parse(audit_json(rep)));
}

template <class S>
void emit_convergence(const ExperimentConfig& cfg, const ConvergenceReport<S>& rep) {
    emit_report(cfg, convergence_csv(rep), nlohmann::json::parse(convergence_json(rep)));
}

std::string indices_witness(const std::vector<int>& w) {
    static const char* const names[] = {"x", "y", "z"};
    std::string s;
    for (size_t i = 0; i < w.size() && i < 3; ++i) {
        if (!s.empty()) s += ' ';
        s += names[i];
        s += '=';
        s += std::to_string(w[i]);
    }
    return s;
}

int cmd_audit(const ExperimentConfig& cfg) {
    AnyModel any = make_model(cfg.model);
    return std::visit(
        [&](const auto& m) {
            AuditReport rep = audit_irq(m, cfg.seed, cfg.samples, cfg.jobs, cfg.tolerance);
            AuditReport ids = audit_identities(m, cfg.seed, cfg.samples, cfg.jobs, cfg.tolerance);
            for (auto& c : ids.checks) rep.checks.push_back(std::move(c));
            emit_audit(cfg, rep);
            return rep.all_pass() ? kExitOk : kExitCheckFailed;
        },
        any);
}

AuditReport finite_report(const OpTable& t) {
    AuditReport rep;
    rep.subject = "table:n=" + std::to_string(t.n);
    const ClassificationFlags f = classify(t);
    const LoosReport loos = check_loos(t);
    const long n = t.n;

    const auto wit = [&](const char* prop) -> std::string {
        const auto it = f.witnesses.find(prop);
        return it == f.witnesses.end() ? std::string() : indices_witness(it->second);
    };
    const auto add = [&](const char* name, long samples, bool pass, bool gating,
                         std::string witness) {
        rep.checks.push_back(CheckResult{name, samples, pass, gating, std::move(witness)});
    };

    add("right_quasigroup", n, f.right_quasigroup, true, wit("right_quasigroup"));
    add("idempotent", n, f.idempotent, true, wit("idempotent"));
    add("self_distributive", n * n * n, f.self_distributive, true, wit("self_distributive"));
    add("quasigroup", n, f.quasigroup, false, wit("quasigroup"));
    add("involutory", n * n, f.involutory, false, wit("involutory"));
    {
        std::string w;
        for (const char* axiom : {"idempotent", "self_distributive", "involutory", "rigid"}) {
            const auto it = loos.witnesses.find(axiom);
            if (it != loos.witnesses.end()) {
                w = std::string(axiom) + " at " + indices_witness(it->second);
                break;
            }
        }
        add("loos", n * n, loos.all(), false, std::move(w));
    }
    AuditReport braid = braid_audit(t);
    for (auto& c : braid.checks) rep.checks.push_back(std::move(c));
    return rep;
}

int cmd_finite(const ExperimentConfig& cfg) {
    if (cfg.table_path.empty()) throw UsageError("finite requires --table <file>");
    const OpTable t = read_table_file(cfg.table_path);
    const AuditReport rep = finite_report(t);
    emit_audit(cfg, rep);
    return rep.all_pass() ? kExitOk : kExitCheckFailed;
}

int cmd_enumerate(const ExperimentConfig& cfg) {
    EnumerationResult res;
    try {
        res = enumerate_quandles(cfg.n);
    } catch (const std::out_of_range& e) {
        throw UsageError(e.what());
    }
    std::string csv = "class,order,entries\n";
    auto classes = nlohmann::json::array();
    for (size_t i = 0; i < res.classes.size(); ++i) {
        const OpTable& t = res.classes[i];
        std::string flat;
        auto rows = nlohmann::json::array();
        for (int x = 0; x < t.n; ++x) {
            auto row = nlohmann::json::array();
            for (int y = 0; y < t.n; ++y) {
                if (!flat.empty()) flat += ' ';
                flat += std::to_string(t.at(x, y));
                row.push_back(t.at(x, y));
            }
            rows.push_back(std::move(row));
        }
        csv += std::to_string(i) + "," + std::to_string(t.n) + "," + flat + "\n";
        nlohmann::json jc;
        jc["n"] = t.n;
        jc["table"] = std::move(rows);
        classes.push_back(std::move(jc));
    }
    csv += "labeled," + std::to_string(res.labeled) + ",-\n";
    nlohmann::json result;
    result["n"] = cfg.n;
    result["labeled"] = res.labeled;
    result["classes"] = std::move(classes);
    emit_report(cfg, csv, result);
    return kExitOk;
}

template <ExactDistanceModel M>
ConvergenceReport<double> cone_convergence(const M& m, std::uint64_t seed, long n_samples,
                                           const Schedule& sched) {
    using P = typename M::Point;
    struct Tup {
        P x, u, v;
    };
    std::vector<Tup> tups;
    tups.reserve(static_cast<size_t>(n_samples));
    for (long i = 0; i < n_samples; ++i) {
        Rng rng = Rng::for_sample(seed, static_cast<std::uint64_t>(i));
        tups.push_back(Tup{m.sample(rng), m.sample(rng), m.sample(rng)});
    }
    const auto family = [&](const Scale& e) {
        double sup = 0.0;
        for (const Tup& t : tups) {
            const Rat lhs = m.dist_pow(m.circle(e, t.x, t.u), m.circle(e, t.x, t.v));
            const Rat rhs = rat_pow(e.modulus(), M::dist_degree) * m.dist_pow(t.u, t.v);
            if (lhs != rhs) sup = std::max(sup, std::fabs(to_double(lhs - rhs)));
        }
        return std::vector<double>{sup};
    };
    return estimate_limit(family, sched);
}

int cmd_converge(const ExperimentConfig& cfg) {
    const bool tangent_check =
        cfg.check == "difference" || cfg.check == "sum" || cfg.check == "inverse";
    if (!tangent_check && cfg.check != "a2" && cfg.check != "cone")
        throw UsageError("unknown check \"" + cfg.check +
                         "\" (want difference|sum|inverse|a2|cone)");
    const Schedule sched = make_schedule(cfg);
    AnyModel any = make_model(cfg.model);
    return std::visit(
        [&](const auto& m) {
            using M = std::remove_cvref_t<decltype(m)>;
            if (tangent_check) {
                Rng rng(cfg.seed);
                const auto x = m.sample(rng), u = m.sample(rng), v = m.sample(rng);
                const auto tr = cfg.check == "difference" ? tangent_difference(m, x, u, v, sched)
                                : cfg.check == "sum"      ? tangent_sum(m, x, u, v, sched)
                                                          : tangent_inverse(m, x, u, sched);
                emit_convergence(cfg, tr.seq);
                return tr.seq.converged() ? kExitOk : kExitCheckFailed;
            }
            if (cfg.check == "a2") {
                Rng rng(cfg.seed);
                const auto x = m.sample(rng);
                const auto rep = check_A2(m, x, cfg.seed, cfg.samples, sched);
                emit_convergence(cfg, rep);
                return rep.converged() ? kExitOk : kExitCheckFailed;
            }
            if constexpr (ExactDistanceModel<M>) {
                const auto rep = cone_convergence(m, cfg.seed, cfg.samples, sched);
                emit_convergence(cfg, rep);
                bool flat = rep.converged();
                for (const auto& v : rep.values) flat = flat && v[0] == 0.0;
                return flat ? kExitOk : kExitCheckFailed;
            } else {
                throw UsageError("cone check requires an exact-distance model, not \"" +
                                 cfg.model + "\"");
            }
        },
        any);
}

int cmd_braid(const ExperimentConfig& cfg) {
    const Schedule sched = make_schedule(cfg);
    AnyModel any = make_model(cfg.model);
    return std::visit(
        [&](const auto& m) {
            SigmaExtension ext(m);
            AuditReport rep = audit_sigma(ext, cfg.seed, cfg.samples, sched, cfg.tol_tangent);
            AuditReport br = braid_audit_continuous(ext, cfg.seed, cfg.samples, cfg.tolerance);
            for (auto& c : br.checks) rep.checks.push_back(std::move(c));
            emit_audit(cfg, rep);
            return rep.all_pass() ? kExitOk : kExitCheckFailed;
        },
        any);
}

int cmd_pansu(const ExperimentConfig& cfg) {
    if (cfg.map != "identity" && cfg.map != "graded" && cfg.map != "sigma" && cfg.map != "chart")
        throw UsageError("unknown map \"" + cfg.map + "\" (want identity|graded|sigma|chart)");
    const Schedule sched = make_schedule(cfg);

    if (cfg.map == "chart") {
        if (cfg.model != "euclidean" && cfg.model != "euclidean:2")
            throw UsageError("map \"chart\" requires --model euclidean:2");
        const EuclideanModel m(2);
        const auto f = [](const EuclideanModel::Point& p) {
            return EuclideanModel::Point{p[0], p[1] + p[0] * p[0]};
        };
        Rng rng(cfg.seed);
        const auto x = m.sample(rng), u = m.sample(rng);
        const auto tr = pansu_derivative(m, m, f, x, u, sched);
        emit_convergence(cfg, tr.seq);
        return tr.seq.converged() ? kExitOk : kExitCheckFailed;
    }
    if (cfg.map == "graded") {
        if (cfg.model != "heisenberg")
            throw UsageError("map \"graded\" requires --model heisenberg");
        const HeisenbergModel m;
        const auto f = [](const HeisenbergPoint& p) { return HeisenbergPoint{p.y, p.x, -p.z}; };
        Rng rng(cfg.seed);
        const auto x = m.sample(rng), u = m.sample(rng);
        const auto tr = pansu_derivative(m, m, f, x, u, sched);
        emit_convergence(cfg, tr.seq);
        return tr.seq.converged() ? kExitOk : kExitCheckFailed;
    }
    AnyModel any = make_model(cfg.model);
    return std::visit(
        [&](const auto& m) {
            Rng rng(cfg.seed);
            const auto x = m.sample(rng), u = m.sample(rng);
            const auto id = [](const auto& p) { return p; };
            const auto sig = [&m, x](const auto& p) { return m.circle(Scale::sigma(), x, p); };
            const auto tr = cfg.map == "identity" ? pansu_derivative(m, m, id, x, u, sched)
                                                  : pansu_derivative(m, m, sig, x, u, sched);
            emit_convergence(cfg, tr.seq);
            return tr.seq.converged() ? kExitOk : kExitCheckFailed;
        },
        any);
}

void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("config " + path + ": " + e.what());
    }
    if (!j.is_object()) throw UsageError("config must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        try {
            if (k == "model")
                cfg.model = it->get<std::string>();
            else if (k == "table")
                cfg.table_path = it->get<std::string>();
            else if (k == "n")
                cfg.n = it->get<int>();
            else if (k == "check")
                cfg.check = it->get<std::string>();
            else if (k == "map")
                cfg.map = it->get<std::string>();
            else if (k == "seed")
                cfg.seed = it->get<std::uint64_t>();
            else if (k == "samples")
                cfg.samples = it->get<long>();
            else if (k == "jobs")
                cfg.jobs = it->get<int>();
            else if (k == "schedule_first")
                cfg.sched_first = it->get<int>();
            else if (k == "schedule_last")
                cfg.sched_last = it->get<int>();
            else if (k == "format")
                cfg.format = it->get<std::string>();
            else if (k == "out")
                cfg.out = it->get<std::string>();
            else if (k == "tolerance")
                cfg.tolerance = it->get<double>();
            else if (k == "tol_tangent")
                cfg.tol_tangent = it->get<double>();
            else
                throw UsageError("config: unknown key \"" + k + "\"");
        } catch (const nlohmann::json::exception& e) {
            throw UsageError("config key \"" + k + "\": " + e.what());
        }
    }
}

}  // namespace

int run(int argc, const char* const* argv) {
    ExperimentConfig cfg;
    try {
        for (int i = 1; i + 1 < argc; ++i)
            if (std::strcmp(argv[i], "--config") == 0) apply_config_file(cfg, argv[i + 1]);
        if (const char* env = std::getenv("EMALG_JOBS")) {
            char* end = nullptr;
            const long v = std::strtol(env, &end, 10);
            if (*env == '\0' || *end != '\0' || v < 1 || v > 256)
                throw UsageError("EMALG_JOBS must be an integer in 1..256");
            cfg.jobs = static_cast<int>(v);
        }

        CLI::App app{"audits and convergence experiments for scaled self-similar operations"};
        app.require_subcommand(1);
        std::string config_path;  // already applied by the pre-scan
        const auto add_common = [&](CLI::App* s) {
            s->add_option("--config", config_path, "JSON config file; flags take precedence");
            s->add_option("--model", cfg.model, "heisenberg | euclidean[:k] | conjugated");
            s->add_option("--seed", cfg.seed, "sampling seed");
            s->add_option("--samples", cfg.samples, "sample count per check");
            s->add_option("--jobs", cfg.jobs, "worker threads (overrides EMALG_JOBS)");
            s->add_option("--schedule-first", cfg.sched_first, "first dyadic exponent");
            s->add_option("--schedule-last", cfg.sched_last, "last dyadic exponent");
            s->add_option("--format", cfg.format, "csv | json");
            s->add_option("--out", cfg.out, "output path (default stdout)");
            s->add_option("--tolerance", cfg.tolerance, "pointwise tolerance (inexact models)");
            s->add_option("--tol-tangent", cfg.tol_tangent, "tolerance for extrapolated limits");
        };
        add_common(app.add_subcommand("audit", "carrier axioms and derived-operation identities"));
        CLI::App* finite = app.add_subcommand("finite", "classify and braid-check a table file");
        add_common(finite);
        finite->add_option("--table", cfg.table_path, "table JSON file");
        CLI::App* enumerate = app.add_subcommand("enumerate", "enumerate quandles of order n");
        add_common(enumerate);
        enumerate->add_option("--n", cfg.n, "order (1..6)");
        CLI::App* converge = app.add_subcommand("converge", "tangent, A2, and cone experiments");
        add_common(converge);
        converge->add_option("--check", cfg.check, "difference | sum | inverse | a2 | cone");
        add_common(app.add_subcommand("braid", "point-symmetry and braid audits"));
        CLI::App* pansu = app.add_subcommand("pansu", "derivative probes");
        add_common(pansu);
        pansu->add_option("--map", cfg.map, "identity | graded | sigma | chart");

        try {
            app.parse(argc, argv);
        } catch (const CLI::CallForHelp& e) {
            app.exit(e);
            return kExitOk;
        } catch (const CLI::ParseError& e) {
            app.exit(e);
            return kExitUsage;
        }

        if (cfg.format != "csv" && cfg.format != "json")
            throw UsageError("unknown format \"" + cfg.format + "\" (want csv|json)");
        cfg.command = app.get_subcommands().front()->get_name();

        if (cfg.command == "audit") return cmd_audit(cfg);
        if (cfg.command == "finite") return cmd_finite(cfg);
        if (cfg.command == "enumerate") return cmd_enumerate(cfg);
        if (cfg.command == "converge") return cmd_converge(cfg);
        if (cfg.command == "braid") return cmd_braid(cfg);
        return cmd_pansu(cfg);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitUsage;
    } catch (const TableFormatError& e) {
        std::fprintf(stderr, "table format error: %s\n", e.what());
        return kExitFormat;
    } catch (const IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return kExitIo;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitCheckFailed;
    }
}

}  // namespace emalg
