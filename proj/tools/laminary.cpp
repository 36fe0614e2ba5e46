// Command-line front end for the universal-circle pipeline: scenario
// validation, circle construction, invariant laminations, classification,
// minimality reduction, SVG rendering, and randomized self-checking.
//
// Exit codes: 0 success, 1 validation failure (bad input), 2 internal
// invariant violation, 64 usage error.

#include "laminary/fuzz.hpp"
#include "laminary/invariant_lams.hpp"
#include "laminary/json_io.hpp"
#include "laminary/svg.hpp"
#include "laminary/universal_circle.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#if defined(_WIN32)
#include <io.h>
#define LAMINARY_ISATTY _isatty(_fileno(stderr))
#else
#include <unistd.h>
#define LAMINARY_ISATTY isatty(fileno(stderr))
#endif

namespace {

using namespace laminary;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitInternal = 2;
constexpr int kExitUsage = 64;

bool use_color() {
    const char* env = std::getenv("LAMINARY_COLOR");
    if (env && std::string(env) == "never") return false;
    // "auto" (and unset): color only on a terminal
    return LAMINARY_ISATTY;
}

std::string paint(const std::string& text, const char* code) {
    if (!use_color()) return text;
    return std::string("\033[") + code + "m" + text + "\033[0m";
}

std::string ok_tag() { return paint("ok", "32"); }
std::string fail_tag() { return paint("error", "31"); }

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << content;
}

int cmd_validate(const std::string& path) {
    const Scenario s = scenario_from_json(read_json_file(path));
    const ScenarioReport rep = validate_scenario(s);
    if (rep.ok) {
        std::cout << ok_tag() << ": " << path << " (" << s.space.size() << " leaves, "
                  << s.markers.size() << " markers)\n";
        return kExitOk;
    }
    for (const auto& p : rep.problems)
        std::cout << fail_tag() << ": " << p << "\n";
    return kExitValidation;
}

int cmd_build(const std::string& path, const std::string& out) {
    const Scenario s = scenario_from_json(read_json_file(path));
    const UniversalCircleResult r = build_universal_circle(s);
    const AxiomReport ax = verify_axioms(r, s);
    json j = result_to_json(r);
    j["axioms"] = {{"monotone", ax.monotone_ok},
                   {"equivariant", ax.equivariance_ok},
                   {"faithful", ax.faithful_ok},
                   {"incomparable_gaps", ax.incomparable_gap_ok},
                   {"witnesses", ax.witnesses}};
    write_output(out, dump_json(j));
    if (!ax.all_ok()) {
        for (const auto& w : ax.witnesses) std::cerr << fail_tag() << ": " << w << "\n";
        throw std::logic_error("constructed circle violates an axiom");
    }
    return kExitOk;
}

int cmd_laminations(const std::string& path, const std::string& out) {
    const UniversalCircleResult r = result_from_json(read_json_file(path));
    const UnivLaminationPair lams = univ_laminations(r);
    write_output(out, dump_json(laminations_to_json(r, lams)));
    return kExitOk;
}

int cmd_classify(const std::string& path, const std::string& out) {
    const UniversalCircleResult r = result_from_json(read_json_file(path));
    const UnivLaminationPair lams = univ_laminations(r);
    const ClassifyReport cls = classify_alternative(r, lams);
    const FixedPointReport fp = fixed_point_check(r);
    write_output(out, dump_json(classification_to_json(cls, fp)));
    return kExitOk;
}

int cmd_reduce(const std::string& path, const std::string& out) {
    const UniversalCircleResult r = result_from_json(read_json_file(path));
    const ReduceOutcome red = minimal_reduce(r);
    json j = result_to_json(red.result);
    json collapse = json::array();
    for (const auto& bp : red.collapse.breakpoints())
        collapse.push_back(json::array({bp.x.str(), bp.y.str()}));
    j["collapse"] = std::move(collapse);
    write_output(out, dump_json(j));
    return kExitOk;
}

int cmd_render(const std::string& path, const std::string& out, const std::string& leaf,
               const std::string& sign, int size) {
    const UniversalCircleResult r = result_from_json(read_json_file(path));
    const UnivLaminationPair lams = univ_laminations(r);
    Lamination plus = lams.plus, minus = lams.minus;
    if (!leaf.empty()) {
        r.space.index_of(leaf);  // throws on unknown leaf
        plus = leaf_lamination(r, lams, leaf, Side::Positive);
        minus = leaf_lamination(r, lams, leaf, Side::Negative);
    }
    if (sign == "plus") minus = {};
    if (sign == "minus") plus = {};
    RenderOptions opt;
    opt.size_px = size;
    write_output(out, render_svg(plus, minus, opt));
    return kExitOk;
}

int cmd_fuzz(std::uint64_t cases, std::uint64_t seed) {
    std::uint64_t failed = 0;
    for (std::uint64_t i = 0; i < cases; ++i) {
        const FuzzCaseReport rep = run_fuzz_case(seed + i);
        if (!rep.ok()) {
            ++failed;
            std::cout << fail_tag() << ": seed " << rep.seed << ": " << rep.problem << "\n";
        }
    }
    std::cout << (failed == 0 ? ok_tag() : fail_tag()) << ": " << (cases - failed) << "/"
              << cases << " cases passed\n";
    return failed == 0 ? kExitOk : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic universal circles for branching leaf spaces"};
    app.require_subcommand(1);

    std::string in_path, out_path, leaf, sign = "both";
    int size = 512;
    std::uint64_t cases = 100, seed = 1;

    auto add_io = [&](CLI::App* sub, bool with_out = true) {
        sub->add_option("input", in_path, "input JSON file")->required();
        if (with_out) sub->add_option("-o,--output", out_path, "output file (default stdout)");
    };
    add_io(app.add_subcommand("validate", "check a scenario file"), false);
    add_io(app.add_subcommand("build", "construct the universal circle"));
    add_io(app.add_subcommand("laminations", "invariant laminations of a built circle"));
    add_io(app.add_subcommand("classify", "fan/genuine alternative and fixed-point check"));
    add_io(app.add_subcommand("reduce", "collapse duplicate sections"));
    auto* render = app.add_subcommand("render", "draw laminations as disk geodesics");
    add_io(render);
    render->add_option("--leaf", leaf, "render the pushforward on this leaf");
    render->add_option("--sign", sign, "plus, minus, or both")
        ->check(CLI::IsMember({"plus", "minus", "both"}));
    render->add_option("--size", size, "image size in pixels (minimum 64)");
    auto* fuzz = app.add_subcommand("fuzz", "random pipeline self-check");
    fuzz->add_option("--cases", cases, "number of cases");
    fuzz->add_option("--seed", seed, "base seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << fail_tag() << ": " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (app.got_subcommand("validate")) return cmd_validate(in_path);
        if (app.got_subcommand("build")) return cmd_build(in_path, out_path);
        if (app.got_subcommand("laminations")) return cmd_laminations(in_path, out_path);
        if (app.got_subcommand("classify")) return cmd_classify(in_path, out_path);
        if (app.got_subcommand("reduce")) return cmd_reduce(in_path, out_path);
        if (app.got_subcommand("render"))
            return cmd_render(in_path, out_path, leaf, sign, size);
        if (app.got_subcommand("fuzz"))
            return cmd_fuzz(cases, seed);
    } catch (const InputError& e) {
        std::cerr << fail_tag() << ": " << e.what() << "\n";
        return kExitValidation;
    } catch (const JsonFormatError& e) {
        std::cerr << fail_tag() << ": " << e.what() << "\n";
        return kExitValidation;
    } catch (const UnknownLeafError& e) {
        std::cerr << fail_tag() << ": " << e.what() << "\n";
        return kExitValidation;
    } catch (const UnknownMarkError& e) {
        std::cerr << fail_tag() << ": " << e.what() << "\n";
        return kExitValidation;
    } catch (const CrossingMarkersError& e) {
        std::cerr << fail_tag() << ": " << e.what() << "\n";
        return kExitValidation;
    } catch (const DisconnectedSupportError& e) {
        std::cerr << fail_tag() << ": " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << fail_tag() << ": " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << fail_tag() << ": internal: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
