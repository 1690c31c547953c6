#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "finsleroid/finsleroid.h"

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using SpacePtr = std::unique_ptr<fsd_space, decltype(&fsd_space_destroy)>;
using ReportPtr = std::unique_ptr<fsd_report, decltype(&fsd_report_destroy)>;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw UsageError("cannot write " + path);
}

// Takes ownership of a C string returned by the library.
std::string take(char* s) {
    std::string out = s ? s : "";
    fsd_string_free(s);
    return out;
}

void check(fsd_status st) {
    if (st != FSD_OK) throw UsageError(fsd_last_error());
}

SpacePtr make_space(const std::string& params_path) {
    fsd_space* raw = nullptr;
    if (params_path.empty()) {
        fsd_params p;
        fsd_default_params(&p);
        check(fsd_space_create(&p, &raw));
    } else {
        check(fsd_space_create_json(read_file(params_path).c_str(), &raw));
    }
    return SpacePtr(raw, &fsd_space_destroy);
}

std::vector<double> parse_vector(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw UsageError("--y expects four comma-separated numbers, got '" + text + "'");
        }
        if (used != item.size()) throw UsageError("--y expects four comma-separated numbers, got '" + text + "'");
        out.push_back(v);
    }
    if (out.size() != 4) throw UsageError("--y expects four comma-separated numbers, got '" + text + "'");
    return out;
}

fsd_perturbation parse_perturbation(const std::string& name) {
    if (name == "none") return FSD_PERTURB_NONE;
    if (name == "j") return FSD_PERTURB_J;
    if (name == "r") return FSD_PERTURB_R;
    if (name == "u") return FSD_PERTURB_U;
    if (name == "f") return FSD_PERTURB_F;
    throw UsageError("unknown perturbation '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-axes pseudo-Finsleroid metric: evaluation, identity verification, sampling"};
    app.require_subcommand(1);

    std::string params_path, out_path, y_text, grid_text, surface = "indicatrix", perturb = "none", report_path;
    unsigned long long seed = 0;
    bool seed_given = false, horizontal = false, quiet = false;
    double lambda = 1.0;

    auto* eval = app.add_subcommand("eval", "F, angles and metric tensor at a tangent vector (JSON)");
    eval->add_option("--params", params_path, "parameter JSON file");
    eval->add_option("--y", y_text, "tangent vector components y0,y1,y2,y3")->required();
    eval->add_option("--out", out_path, "output file (default stdout)");

    auto* verify = app.add_subcommand("verify", "evaluate every identity and write the report (JSON)");
    verify->add_option("--params", params_path, "parameter JSON file");
    verify->add_option("--seed", seed, "seed of the random samples")->each([&](const std::string&) { seed_given = true; });
    verify->add_option("--out", out_path, "report file (default stdout)");
    verify->add_option("--perturb", perturb, "negative control: none, j, r, u or f");
    verify->add_flag("--quiet", quiet, "no summary table on stderr");

    auto* sample = app.add_subcommand("sample", "CSV of indicatrix points or a horizontal-section scan");
    sample->add_option("--params", params_path, "parameter JSON file");
    sample->add_option("--surface", surface, "indicatrix or horizontal")
        ->check(CLI::IsMember({"indicatrix", "horizontal"}));
    sample->add_flag("--horizontal", horizontal, "same as --surface horizontal");
    sample->add_option("--grid", grid_text, "AxBxC (indicatrix: eta x theta x phi; horizontal: theta x phi x scale)");
    sample->add_option("--lambda", lambda, "height of the horizontal section");
    sample->add_option("--out", out_path, "CSV file (default stdout)");

    auto* report = app.add_subcommand("report", "print a stored report with equation references");
    report->add_option("file", report_path, "report JSON written by verify")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*eval) {
            const SpacePtr space = make_space(params_path);
            const std::vector<double> y = parse_vector(y_text);
            char* json = nullptr;
            check(fsd_eval_json(space.get(), y.data(), &json));
            write_output(out_path, take(json));
            return kOk;
        }
        if (*verify) {
            const SpacePtr space = make_space(params_path);
            fsd_plan plan;
            fsd_default_plan(&plan);
            if (seed_given) plan.seed = seed;
            fsd_report* raw = nullptr;
            check(fsd_verify(space.get(), &plan, parse_perturbation(perturb), &raw));
            const ReportPtr rep(raw, &fsd_report_destroy);
            char* json = nullptr;
            check(fsd_report_json(rep.get(), &json));
            write_output(out_path, take(json));
            if (!quiet) {
                char* text = nullptr;
                check(fsd_report_text(rep.get(), &text));
                std::cerr << take(text);
            }
            return fsd_report_overall(rep.get()) == 1 ? kOk : kFailed;
        }
        if (*sample) {
            const SpacePtr space = make_space(params_path);
            if (horizontal) surface = "horizontal";
            char* csv = nullptr;
            if (surface == "indicatrix") {
                check(fsd_sample_indicatrix_csv(space.get(), grid_text.empty() ? "16x16x8" : grid_text.c_str(), &csv));
            } else {
                check(fsd_sample_horizontal_csv(space.get(), lambda, grid_text.empty() ? "16x8x1" : grid_text.c_str(),
                                                &csv));
            }
            write_output(out_path, take(csv));
            return kOk;
        }
        if (*report) {
            char* text = nullptr;
            check(fsd_format_report_json(read_file(report_path).c_str(), &text));
            write_output("", take(text));
            return kOk;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
