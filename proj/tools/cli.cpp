#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "floorplan/checks.hpp"
#include "floorplan/codec.hpp"
#include "floorplan/errors.hpp"
#include "floorplan/prompts.hpp"
#include "floorplan/refiner.hpp"
#include "floorplan/render.hpp"
#include "floorplan/topology.hpp"
#include "floorplan/transport.hpp"

namespace fs = std::filesystem;

namespace floorplan::cli {

std::optional<std::string> process_env(const std::string& name) {
    if (const char* value = std::getenv(name.c_str())) return std::string(value);
    return std::nullopt;
}

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kPlacementFailed = 2;

// Keys shared by config files, FLOORPLAN_* variables and flags.
const std::vector<std::string> kKeys = {"delta",   "lambda",   "max_iters", "flush_tol", "grid",    "catalog",
                                        "requirements", "transport", "response",  "endpoint", "model",
                                        "api_key", "timeout",  "retries",   "format",    "jobs"};
const std::vector<std::string> kPathKeys = {"catalog", "requirements", "response"};

struct Settings {
    RefinerConfig refiner;
    CheckConfig checks;
    FurnitureCatalog catalog = FurnitureCatalog::defaults();
    RoomRequirements requirements = RoomRequirements::defaults();
    TransportConfig transport;
    bool structured = false;
    std::size_t jobs = 1;
};

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PlanError(ErrorCode::IoError, "cannot read " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw PlanError(ErrorCode::IoError, "cannot write " + path.string());
}

std::string env_name(const std::string& key) {
    std::string name = "FLOORPLAN_";
    for (char c : key) name += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return name;
}

void apply_config_file(const std::string& path, std::map<std::string, std::string>& values) {
    const auto doc = nlohmann::json::parse(read_text(path), nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) throw PlanError(ErrorCode::ConfigError, "config must be a JSON object", path);
    const fs::path base = fs::path(path).parent_path();
    for (const auto& [key, value] : doc.items()) {
        if (key == "api_key") throw PlanError(ErrorCode::ConfigError, "credentials belong in the environment", path);
        if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
            throw PlanError(ErrorCode::ConfigError, "unknown config key '" + key + "'", path);
        }
        std::string text = value.is_string() ? value.get<std::string>() : value.dump();
        if (std::find(kPathKeys.begin(), kPathKeys.end(), key) != kPathKeys.end() && fs::path(text).is_relative()) {
            text = (base / text).string();
        }
        values[key] = text;
    }
}

double number_value(const std::map<std::string, std::string>& values, const std::string& key, double fallback) {
    const auto it = values.find(key);
    if (it == values.end()) return fallback;
    try {
        std::size_t used = 0;
        const double v = std::stod(it->second, &used);
        if (used == it->second.size()) return v;
    } catch (const std::exception&) {
    }
    throw PlanError(ErrorCode::ConfigError, key + " must be a number, got '" + it->second + "'");
}

std::size_t count_value(const std::map<std::string, std::string>& values, const std::string& key, std::size_t fallback) {
    const double v = number_value(values, key, static_cast<double>(fallback));
    if (v < 0 || v != std::floor(v)) throw PlanError(ErrorCode::ConfigError, key + " must be a non-negative integer");
    return static_cast<std::size_t>(v);
}

Settings resolve_settings(const std::map<std::string, std::string>& values) {
    Settings s;
    s.refiner.clearance_delta = number_value(values, "delta", s.refiner.clearance_delta);
    s.refiner.step_lambda = number_value(values, "lambda", s.refiner.step_lambda);
    s.refiner.max_iterations = count_value(values, "max_iters", s.refiner.max_iterations);
    s.refiner.flush_tolerance = number_value(values, "flush_tol", s.refiner.flush_tolerance);
    s.refiner.validate();
    s.checks.clearance_delta = s.refiner.clearance_delta;
    s.checks.grid = number_value(values, "grid", s.checks.grid);
    if (!(s.checks.grid > 0.0)) throw PlanError(ErrorCode::ConfigError, "grid must be > 0");
    if (const auto it = values.find("catalog"); it != values.end()) s.catalog = parse_catalog(read_text(it->second));
    if (const auto it = values.find("requirements"); it != values.end()) {
        s.requirements = parse_requirements(read_text(it->second));
    }
    const std::string transport = values.count("transport") ? values.at("transport") : "file";
    if (transport == "file") {
        s.transport.kind = TransportConfig::Kind::file;
    } else if (transport == "endpoint") {
        s.transport.kind = TransportConfig::Kind::endpoint;
    } else {
        throw PlanError(ErrorCode::ConfigError, "transport must be file or endpoint");
    }
    if (values.count("response")) s.transport.path = values.at("response");
    if (values.count("endpoint")) s.transport.url = values.at("endpoint");
    if (values.count("model")) s.transport.model = values.at("model");
    if (values.count("api_key")) s.transport.api_key = values.at("api_key");
    s.transport.timeout_seconds = number_value(values, "timeout", s.transport.timeout_seconds);
    s.transport.retries = static_cast<int>(count_value(values, "retries", 2));
    const std::string format = values.count("format") ? values.at("format") : "text";
    if (format != "text" && format != "structured") throw PlanError(ErrorCode::ConfigError, "format must be text or structured");
    s.structured = format == "structured";
    s.jobs = std::max<std::size_t>(1, count_value(values, "jobs", 1));
    return s;
}

int report_error(const PlanError& e, const std::string& stage, const Settings* settings, std::ostream& out,
                 std::ostream& err) {
    if (settings && settings->structured) {
        nlohmann::ordered_json doc;
        if (!stage.empty()) doc["stage"] = stage;
        doc["code"] = error_code_name(e.code());
        doc["path"] = e.path();
        doc["message"] = e.detail();
        out << nlohmann::ordered_json{{"error", doc}}.dump(2) << "\n";
    } else {
        err << (stage.empty() ? "" : "stage " + stage + ": ") << "error: " << e.what() << "\n";
    }
    return kInputError;
}

struct LoadedPlan {
    FloorPlan plan;
    std::vector<Diagnostic> diagnostics;
};

LoadedPlan load_plan(const std::string& text, const Settings& settings) {
    TopologyResult topo = build_topology(parse_plan(text));
    return {resolve_catalog(topo.plan, settings.catalog), std::move(topo.diagnostics)};
}

std::string failures_text(const RefineResult& result) {
    std::ostringstream out;
    out << "placed " << result.placed_count() << "/" << result.traces.size() << "\n";
    for (const PlacementTrace& t : result.traces) {
        if (t.outcome == PlacementOutcome::failed) {
            out << "PlacementFailed " << t.room << "/" << t.name << " (item " << t.item << "): " << t.failure_reason
                << "\n";
        }
    }
    return out.str();
}

nlohmann::ordered_json failures_json(const RefineResult& result) {
    nlohmann::ordered_json doc;
    doc["placed"] = result.placed_count();
    doc["total"] = result.traces.size();
    doc["failures"] = nlohmann::ordered_json::array();
    for (const PlacementTrace& t : result.traces) {
        if (t.outcome == PlacementOutcome::failed) {
            doc["failures"].push_back({{"item", t.item}, {"name", t.name}, {"room", t.room}, {"reason", t.failure_reason}});
        }
    }
    return doc;
}

// Per-input options filled by the subcommand parsers.
struct Request {
    std::string input;
    std::string out;
    std::string trace;
    std::string element;
    bool verify = false;
    bool overlay = false;
    bool refine_first = false;
    bool directives = false;
};

int cmd_validate(const Request& req, const Settings& s, std::ostream& out, std::ostream& err) {
    LoadedPlan loaded;
    try {
        loaded = load_plan(read_text(req.input), s);
    } catch (const PlanError& e) {
        return report_error(e, "", &s, out, err);
    }
    const FloorPlan& plan = loaded.plan;
    if (s.structured) {
        nlohmann::ordered_json doc;
        doc["valid"] = true;
        doc["walls"] = plan.walls.size();
        doc["openings"] = plan.openings.size();
        doc["furniture"] = plan.furniture.size();
        doc["rooms"] = nlohmann::ordered_json::array();
        for (const RoomRegion& r : plan.rooms) {
            doc["rooms"].push_back({{"name", r.name}, {"area", std::stod(format_number(area(r.boundary)))}});
        }
        doc["diagnostics"] = nlohmann::ordered_json::array();
        for (const Diagnostic& d : loaded.diagnostics) {
            doc["diagnostics"].push_back({{"code", d.code}, {"subject", d.subject}, {"message", d.message}});
        }
        out << doc.dump(2) << "\n";
    } else {
        out << "valid: " << plan.walls.size() << " walls, " << plan.openings.size() << " openings, "
            << plan.furniture.size() << " furniture items, " << plan.rooms.size() << " rooms\n";
        for (const RoomRegion& r : plan.rooms) out << "room " << r.name << " " << format_number(area(r.boundary)) << "\n";
        for (const Diagnostic& d : loaded.diagnostics) {
            out << "warning " << d.code << " [" << d.subject << "] " << d.message << "\n";
        }
    }
    return kOk;
}

int cmd_refine(const Request& req, const Settings& s, std::ostream& out, std::ostream& err) {
    LoadedPlan loaded;
    try {
        loaded = load_plan(read_text(req.input), s);
    } catch (const PlanError& e) {
        return report_error(e, "", &s, out, err);
    }
    const RefineResult result = refine_plan(loaded.plan, s.refiner);
    const std::string refined = emit_plan(result.plan);
    if (req.out.empty()) {
        out << refined;
    } else {
        write_text(req.out, refined);
    }
    if (!req.trace.empty()) write_text(req.trace, emit_traces(result.traces));

    std::vector<OracleCheck> checks;
    if (req.verify) checks = verify_refinement(loaded.plan, result, s.refiner, 0.25, 2.0 * s.refiner.step_lambda);
    if (s.structured) {
        nlohmann::ordered_json doc = failures_json(result);
        if (req.verify) {
            doc["verify"] = nlohmann::ordered_json::array();
            for (const OracleCheck& c : checks) {
                doc["verify"].push_back({{"item", c.item},
                                         {"name", c.name},
                                         {"placed", c.greedy_placed},
                                         {"oracle_size", c.oracle_size},
                                         {"nearest", std::stod(format_number(c.nearest_member_distance))},
                                         {"agrees", c.agrees}});
            }
        }
        err << doc.dump(2) << "\n";
    } else {
        err << failures_text(result);
        if (req.verify) {
            std::size_t agree = 0;
            for (const OracleCheck& c : checks) {
                agree += c.agrees;
                err << "verify item " << c.item << " " << c.name << ": " << (c.greedy_placed ? "placed" : "failed")
                    << ", oracle " << c.oracle_size << " cells";
                if (c.nearest_member_distance >= 0) err << ", nearest " << format_number(c.nearest_member_distance);
                err << (c.agrees ? ", agrees" : ", DISAGREES") << "\n";
            }
            err << "oracle agreement " << agree << "/" << checks.size() << "\n";
        }
    }
    return result.placed_count() == result.traces.size() ? kOk : kPlacementFailed;
}

int cmd_check(const Request& req, const Settings& s, std::ostream& out, std::ostream& err) {
    LoadedPlan loaded;
    try {
        loaded = load_plan(read_text(req.input), s);
    } catch (const PlanError& e) {
        return report_error(e, "", &s, out, err);
    }
    FloorPlan plan = loaded.plan;
    if (req.refine_first) plan = refine_plan(plan, s.refiner).plan;
    const CheckReport report = run_all_checks(plan, s.requirements, s.checks);
    const std::string text = s.structured ? report_structured(report) : report_text(report);
    if (req.out.empty()) {
        out << text;
    } else {
        write_text(req.out, text);
    }
    return report.exit_code();
}

int cmd_render(const Request& req, const Settings& s, std::ostream& out, std::ostream& err) {
    FloorPlan plan;
    std::vector<PlacementTrace> traces;
    try {
        const std::string text = read_text(req.input);
        if (req.overlay) {
            const RefineResult result = refine_plan(load_plan(text, s).plan, s.refiner);
            plan = result.plan;
            traces = result.traces;
        } else {
            plan = resolve_catalog(parse_plan(text), s.catalog);
        }
    } catch (const PlanError& e) {
        return report_error(e, "", &s, out, err);
    }
    SvgStyle style;
    if (req.overlay) style.traces = &traces;
    const std::string svg = render_svg(plan, style);
    if (req.out.empty()) {
        out << svg;
    } else {
        write_text(req.out, svg);
    }
    return kOk;
}

int cmd_export(const Request& req, const Settings& s, std::ostream& out, std::ostream& err) {
    BimScripts scripts;
    try {
        scripts = export_bim_scripts(parse_plan(read_text(req.input)));
    } catch (const PlanError& e) {
        return report_error(e, "", &s, out, err);
    }
    const fs::path dir = req.out;
    write_text(dir / "walls.py", scripts.walls);
    write_text(dir / "openings.py", scripts.openings);
    write_text(dir / "furniture.py", scripts.furniture);
    return kOk;
}

int cmd_prompt(const Request& req, const Settings& s, std::ostream& out, std::ostream& err) {
    std::string text;
    try {
        if (!req.element.empty()) {
            static const std::map<std::string, ElementClass> classes = {{"walls", ElementClass::walls},
                                                                        {"doors", ElementClass::doors},
                                                                        {"windows", ElementClass::windows},
                                                                        {"furniture", ElementClass::furniture}};
            text = build_script_prompt(classes.at(req.element));
        } else {
            LayoutBrief brief = req.input.empty() ? LayoutBrief::case_study() : parse_brief(read_text(req.input));
            brief.directives = brief.directives || req.directives;
            text = build_layout_prompt(brief);
        }
    } catch (const PlanError& e) {
        return report_error(e, "", &s, out, err);
    }
    if (req.out.empty()) {
        out << text;
    } else {
        write_text(req.out, text);
    }
    return kOk;
}

int cmd_pipeline(const Request& req, const Settings& s, std::ostream& out, std::ostream& err) {
    const fs::path dir = req.out;
    std::string stage = "prompt";
    try {
        LayoutBrief brief = req.input.empty() ? LayoutBrief::case_study() : parse_brief(read_text(req.input));
        brief.directives = brief.directives || req.directives;
        const std::string prompt = build_layout_prompt(brief);
        write_text(dir / "prompt.txt", prompt);

        stage = "fetch";
        if (s.transport.kind == TransportConfig::Kind::file && s.transport.path.empty()) {
            throw PlanError(ErrorCode::ConfigError, "file transport needs --response");
        }
        if (s.transport.kind == TransportConfig::Kind::endpoint && s.transport.url.empty()) {
            throw PlanError(ErrorCode::ConfigError, "endpoint transport needs --endpoint");
        }
        const std::string response = fetch_layout(prompt, s.transport);
        write_text(dir / "response.txt", response);

        stage = "sanitize";
        const std::string json = sanitize_llm_response(response);

        stage = "parse";
        const FloorPlan parsed = parse_plan(json);
        write_text(dir / "plan.json", emit_plan(parsed));

        stage = "topology";
        TopologyResult topo = build_topology(parsed);

        stage = "catalog";
        const FloorPlan plan = resolve_catalog(topo.plan, s.catalog);

        stage = "refine";
        const RefineResult refined = refine_plan(plan, s.refiner);
        write_text(dir / "refined.json", emit_plan(refined.plan));
        write_text(dir / "trace.json", emit_traces(refined.traces));

        stage = "check";
        const CheckReport report = run_all_checks(refined.plan, s.requirements, s.checks);
        write_text(dir / (s.structured ? "report.json" : "report.txt"),
                   s.structured ? report_structured(report) : report_text(report));

        stage = "render";
        write_text(dir / "plan.svg", render_svg(refined.plan));

        stage = "export";
        const BimScripts scripts = export_bim_scripts(refined.plan);
        write_text(dir / "walls.py", scripts.walls);
        write_text(dir / "openings.py", scripts.openings);
        write_text(dir / "furniture.py", scripts.furniture);

        for (const Diagnostic& d : topo.diagnostics) {
            err << "warning " << d.code << " [" << d.subject << "] " << d.message << "\n";
        }
        err << failures_text(refined);
        out << report_text(report);
        if (report.exit_code() != kOk) return report.exit_code();
        return refined.placed_count() == refined.traces.size() ? kOk : kPlacementFailed;
    } catch (const PlanError& e) {
        return report_error(e, stage, &s, out, err);
    }
}

using Command = int (*)(const Request&, const Settings&, std::ostream&, std::ostream&);

// A directory input runs the command on every *.json inside it, `jobs` at a
// time, and prints the results in file-name order.
int run_batch(Command command, const Request& req, const Settings& s, std::ostream& out, std::ostream& err) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(req.input)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    struct Slot {
        std::ostringstream out, err;
        int code = 0;
    };
    std::vector<Slot> slots(files.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < files.size(); i = next++) {
            Request one = req;
            one.input = files[i].string();
            if (!req.out.empty()) one.out = (fs::path(req.out) / files[i].filename()).string();
            if (!req.trace.empty()) one.trace = (fs::path(req.trace) / files[i].filename()).string();
            try {
                slots[i].code = command(one, s, slots[i].out, slots[i].err);
            } catch (const PlanError& e) {
                slots[i].code = report_error(e, "", &s, slots[i].out, slots[i].err);
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min(s.jobs, files.size()); ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();

    int code = kOk;
    for (std::size_t i = 0; i < files.size(); ++i) {
        out << "== " << files[i].filename().string() << " (exit " << slots[i].code << ") ==\n" << slots[i].out.str();
        err << slots[i].err.str();
        code = std::max(code, slots[i].code);
    }
    return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const EnvLookup& env) {
    CLI::App app{"Floor plan layout toolkit: validate, refine, check, render and export plan files", "floorplan"};
    app.require_subcommand(1);

    std::map<std::string, std::string> flags;
    std::map<std::string, CLI::Option*> flag_options;
    auto add_setting = [&](const std::string& key, const std::string& name, const std::string& help) {
        flag_options[key] = app.add_option(name, flags[key], help + " (env " + env_name(key) + ")");
    };
    add_setting("delta", "--delta", "minimum clearance delta in feet, default 1");
    add_setting("lambda", "--lambda", "greedy step length in feet, default 0.5");
    add_setting("max_iters", "--max-iters", "move budget per item, default 10000");
    add_setting("flush_tol", "--flush-tol", "headboard-to-wall tolerance in feet, default 0.05");
    add_setting("grid", "--grid", "pathfinding lattice spacing in feet, default 0.5");
    add_setting("catalog", "--catalog", "furniture catalog file");
    add_setting("requirements", "--requirements", "room requirements file");
    add_setting("transport", "--transport", "file or endpoint");
    add_setting("response", "--response", "saved model response for the file transport");
    add_setting("endpoint", "--endpoint", "chat-completions URL for the endpoint transport");
    add_setting("model", "--model", "model name sent to the endpoint");
    add_setting("timeout", "--timeout", "endpoint timeout in seconds, default 60");
    add_setting("retries", "--retries", "extra endpoint attempts, default 2");
    add_setting("format", "--format", "text or structured");
    add_setting("jobs", "--jobs", "parallel workers for directory inputs");
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file; flags and FLOORPLAN_* variables override it");
    app.footer("Credentials: FLOORPLAN_API_KEY is sent as a bearer token to the endpoint.\n"
               "Exit codes: 0 success, 1 input or parse error, 2 warnings or placement failures, 3 check errors.");

    Request req;
    Command command = nullptr;
    bool batchable = false;
    auto sub = [&](const char* name, const char* help, Command fn, bool batch) {
        CLI::App* s = app.add_subcommand(name, help);
        s->fallthrough();
        s->callback([&, fn, batch] {
            command = fn;
            batchable = batch;
        });
        return s;
    };

    CLI::App* validate = sub("validate", "parse a plan, extract rooms and host openings", cmd_validate, true);
    validate->add_option("plan", req.input, "plan file or directory")->required();

    CLI::App* refine = sub("refine", "move furniture to feasible wall-adjacent positions", cmd_refine, true);
    refine->add_option("plan", req.input, "plan file or directory")->required();
    refine->add_option("--out", req.out, "refined plan file (directory for batch input)");
    refine->add_option("--trace", req.trace, "placement trace file (directory for batch input)");
    refine->add_flag("--verify", req.verify, "compare each placement with the brute-force feasible set");

    CLI::App* check = sub("check", "run the content, opening and circulation checks", cmd_check, true);
    check->add_option("plan", req.input, "plan file or directory")->required();
    check->add_option("--out", req.out, "report file");
    check->add_flag("--refine", req.refine_first, "refine furniture before checking");

    CLI::App* render = sub("render", "draw the plan as SVG", cmd_render, false);
    render->add_option("plan", req.input, "plan file")->required();
    render->add_option("--out", req.out, "SVG file");
    render->add_flag("--overlay", req.overlay, "refine first and draw every visited candidate");

    CLI::App* exporter = sub("export", "write BIM scripts for walls, openings and furniture", cmd_export, false);
    exporter->add_option("plan", req.input, "plan file")->required();
    exporter->add_option("--out", req.out, "output directory")->required();

    CLI::App* prompt = sub("prompt", "print the layout prompt for a brief, or a script prompt", cmd_prompt, false);
    prompt->add_option("brief", req.input, "brief file; the case-study brief when omitted");
    prompt->add_option("--element", req.element, "script prompt for walls, doors, windows or furniture")
        ->check(CLI::IsMember({"walls", "doors", "windows", "furniture"}));
    prompt->add_flag("--directives", req.directives, "append the expanded clearance, window and door rules");
    prompt->add_option("--out", req.out, "output file");

    CLI::App* pipeline = sub("pipeline", "prompt, fetch, parse, refine, check, render and export", cmd_pipeline, false);
    pipeline->add_option("brief", req.input, "brief file; the case-study brief when omitted");
    pipeline->add_option("--out", req.out, "output directory")->required();
    pipeline->add_flag("--directives", req.directives, "append the expanded rules to the prompt");

    std::vector<std::string> argv_store{"floorplan"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (std::string& a : argv_store) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    Settings settings;
    try {
        std::map<std::string, std::string> values;
        if (!config_path.empty()) apply_config_file(config_path, values);
        for (const std::string& key : kKeys) {
            if (const auto v = env(env_name(key))) values[key] = *v;
        }
        for (const auto& [key, option] : flag_options) {
            if (option->count() > 0) values[key] = flags[key];
        }
        settings = resolve_settings(values);
    } catch (const PlanError& e) {
        return report_error(e, "", nullptr, out, err);
    }

    try {
        if (batchable && fs::is_directory(req.input)) return run_batch(command, req, settings, out, err);
        return command(req, settings, out, err);
    } catch (const PlanError& e) {
        return report_error(e, "", &settings, out, err);
    } catch (const fs::filesystem_error& e) {
        return report_error(PlanError(ErrorCode::IoError, e.what()), "", &settings, out, err);
    }
}

}  // namespace floorplan::cli
