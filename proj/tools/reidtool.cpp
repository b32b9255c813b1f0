// Command-line front end. Every flag is a JobSpec field of the same name, so
//   reidtool reid --group klein --aut "b,r=2"
// and
//   echo '{"command":"reid","group":"klein","aut":"b,r=2"}' | reidtool --spec -
// run the same job.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "reid/jobs.hpp"

namespace {

const std::map<std::string, std::vector<std::string>>& command_fields() {
    static const std::map<std::string, std::vector<std::string>> f = {
        {"witt", {"rank", "max-degree"}},
        {"layers", {"rank", "class", "images"}},
        {"reid", {"group", "aut", "sign", "n", "matrix", "relations", "rank", "class", "images", "top", "layers"}},
        {"certify", {"problem"}},
        {"scan-q42", {"bound"}},
        {"scan-g53", {"b-bound"}},
        {"klein", {"aut", "g", "h", "lo", "hi"}},
        {"oracle", {"target", "m-values", "samples", "aut", "radius", "m"}},
        {"repro", {"bound", "rank", "max-degree", "b-bound", "count"}},
    };
    return f;
}

// Flag text is JSON when it parses as JSON ("3", "[[1,0],[0,1]]"), else a
// plain string ("b,r=2", "Q42").
reid::Json flag_value(const std::string& text) {
    reid::Json j = reid::Json::parse(text, nullptr, false);
    if (j.is_discarded()) return reid::Json(text);
    return j;
}

reid::Json read_spec(const std::string& path) {
    std::stringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw reid::DomainError("cannot open spec file \"" + path + "\"");
        buf << in.rdbuf();
    }
    return reid::Json::parse(buf.str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reidemeister numbers of nilpotent and polycyclic groups"};
    app.require_subcommand(0, 1);

    std::string spec_path, output = "human";
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    app.add_option("--spec", spec_path, "JSON job spec file, or - for stdin");
    app.add_option("--output", output, "Report format")->check(CLI::IsMember({"json", "human"}));
    app.add_option("--seed", seed, "Seed for randomized procedures");
    app.add_option("--threads", threads, "Worker threads for scans");

    std::map<std::string, std::map<std::string, std::string>> values;
    std::map<std::string, std::map<std::string, CLI::Option*>> options;
    const std::map<std::string, std::string> about{
        {"witt", "Ranks of the lower central quotients of a free group"},
        {"layers", "Induced layer matrices of a free nilpotent endomorphism"},
        {"reid", "Reidemeister number of an endomorphism"},
        {"certify", "Build and verify a certificate for a problem"},
        {"klein", "Twisted conjugacy and witness families on the Klein bottle group"},
        {"scan-q42", "Exhaustive scan of lifting automorphisms of G(4,2)"},
        {"scan-g53", "Scan of automorphisms of G53"},
        {"oracle", "Brute-force cross-checks"},
        {"repro", "Reproduce a named worked example"},
    };
    for (const auto& [cmd, fields] : command_fields()) {
        const auto it = about.find(cmd);
        CLI::App* sub = app.add_subcommand(cmd, it == about.end() ? "" : it->second);
        sub->fallthrough();
        sub->set_help_flag("--help", "Print this help message and exit");  // frees -h for the klein --h field
        for (const std::string& f : fields) options[cmd][f] = sub->add_option("--" + f, values[cmd][f]);
        if (cmd == "repro") options[cmd]["example"] = sub->add_option("example,--example", values[cmd]["example"], "Target id");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    reid::JobResult result;
    try {
        reid::Json spec = spec_path.empty() ? reid::Json::object() : read_spec(spec_path);
        if (!spec.is_object()) throw reid::DomainError("job spec must be a JSON object");
        auto subs = app.get_subcommands();
        if (!subs.empty()) {
            const std::string cmd = subs.front()->get_name();
            if (spec.contains("command") && spec["command"] != cmd)
                throw reid::DomainError("spec command differs from the subcommand");
            spec["command"] = cmd;
            for (const auto& [field, text] : values[cmd])
                if (options[cmd][field]->count()) spec[field] = field == "example" ? reid::Json(text) : flag_value(text);
        }
        if (!spec.contains("command"))
            throw reid::DomainError("no command given (use a subcommand or a spec with \"command\")");
        if (seed) spec["seed"] = *seed;
        if (threads) spec["threads"] = *threads;
        result = reid::run_job_checked(spec);
    } catch (const std::invalid_argument& e) {
        result = {2, reid::Json{{"error", e.what()}}};
    } catch (const reid::Json::exception& e) {
        result = {2, reid::Json{{"error", std::string("malformed JSON input: ") + e.what()}}};
    }

    if (output == "json")
        std::cout << result.report.dump(2) << '\n';
    else if (result.exit_code == 2)
        std::cerr << "error: " << result.report.value("error", std::string("input error")) << '\n';
    else
        std::cout << reid::render_human(result.report);
    return result.exit_code;
}
