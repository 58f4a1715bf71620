#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "medea/csv.hpp"
#include "medea/stats.hpp"

namespace medea {

// One loaded experiment directory: its labels and the per-run metric window
// (mean totalTokenRatio over the final two epochs).
struct ExperimentSample {
    std::string dir;
    std::string environment;
    std::string season;
    std::string variant;
    std::vector<double> window;
    int dropped_runs = 0;
};

namespace detail {

inline double csv_window_ratio(const CsvTable& table) {
    const std::size_t col = table.column("totalTokenRatio");
    const std::size_t n = table.rows.size();
    double sum = 0.0;
    int used = 0;
    for (std::size_t i = n >= 2 ? n - 2 : 0; i < n; ++i) {
        const double v = csv_to_double(table.rows[i][col]);
        if (!std::isnan(v)) {
            sum += v;
            ++used;
        }
    }
    return used ? sum / used : std::numeric_limits<double>::quiet_NaN();
}

inline int axis_rank(const std::string& axis, const std::string& label) {
    static const std::map<std::string, int> ranks{
        {"environment/scarce", 0}, {"environment/balanced", 1}, {"environment/abundant", 2},
        {"season/static", 0},      {"season/fast", 1},          {"season/slow", 2},
        {"variant/baseline", 0},   {"variant/evo", 1},          {"variant/il", 2},
        {"variant/evo_il", 3},
    };
    const auto it = ranks.find(axis + "/" + label);
    return it == ranks.end() ? 100 : it->second;
}

}  // namespace detail

inline ExperimentSample load_experiment(const std::filesystem::path& dir) {
    const std::filesystem::path manifest_path = dir / "manifest.json";
    std::ifstream in(manifest_path);
    if (!in)
        throw std::runtime_error("cannot open " + manifest_path.string());
    nlohmann::json manifest = nlohmann::json::parse(in);

    ExperimentSample sample;
    sample.dir = dir.string();
    sample.environment = manifest.at("labels").at("environment").get<std::string>();
    sample.season = manifest.at("labels").at("season").get<std::string>();
    sample.variant = manifest.at("labels").at("variant").get<std::string>();

    const auto& epoch_files = manifest.at("files").at("epochs");
    if (epoch_files.empty())
        throw std::runtime_error("no runs listed in " + manifest_path.string());
    for (const auto& name : epoch_files) {
        const CsvTable table = parse_csv(read_file(dir / name.get<std::string>()));
        const double w = detail::csv_window_ratio(table);
        if (std::isnan(w))
            ++sample.dropped_runs;
        else
            sample.window.push_back(w);
    }
    return sample;
}

// One pairwise comparison between two experiments that differ only in `axis`.
struct Comparison {
    std::string axis;  // "environment" | "season" | "variant"
    std::string group_a, group_b;  // the two labels shared by both sides
    std::string x, y;
    std::size_t n_x = 0, n_y = 0;
    bool tested = false;  // false when either side has < 3 usable runs
    StatReport report;
};

// Builds all pairwise comparisons along one axis, grouped by the other two
// labels. Pairs are ordered canonically (scarce<balanced<abundant,
// static<fast<slow, baseline<evo<il<evo_il; unknown labels sort last).
inline std::vector<Comparison> compare_along_axis(const std::vector<ExperimentSample>& samples,
                                                  const std::string& axis, double alpha = 0.05) {
    const auto label_of = [&](const ExperimentSample& s) -> const std::string& {
        if (axis == "environment") return s.environment;
        if (axis == "season") return s.season;
        if (axis == "variant") return s.variant;
        throw std::invalid_argument("unknown axis " + axis);
    };
    const auto group_of = [&](const ExperimentSample& s) {
        if (axis == "environment") return std::pair(s.season, s.variant);
        if (axis == "season") return std::pair(s.environment, s.variant);
        return std::pair(s.environment, s.season);
    };

    std::map<std::pair<std::string, std::string>, std::vector<const ExperimentSample*>> groups;
    for (const ExperimentSample& s : samples)
        groups[group_of(s)].push_back(&s);

    std::vector<Comparison> out;
    for (auto& [key, members] : groups) {
        std::stable_sort(members.begin(), members.end(),
                         [&](const ExperimentSample* a, const ExperimentSample* b) {
                             const int ra = detail::axis_rank(axis, label_of(*a));
                             const int rb = detail::axis_rank(axis, label_of(*b));
                             if (ra != rb) return ra < rb;
                             return label_of(*a) < label_of(*b);
                         });
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                const ExperimentSample& xs = *members[i];
                const ExperimentSample& ys = *members[j];
                Comparison c;
                c.axis = axis;
                c.group_a = key.first;
                c.group_b = key.second;
                c.x = label_of(xs);
                c.y = label_of(ys);
                c.n_x = xs.window.size();
                c.n_y = ys.window.size();
                if (c.n_x >= 3 && c.n_y >= 3) {
                    c.tested = true;
                    c.report = compare(xs.window, ys.window, alpha);
                } else {
                    c.report.p_value = std::numeric_limits<double>::quiet_NaN();
                    if (!xs.window.empty() && !ys.window.empty()) {
                        c.report.vd_a = vargha_delaney_a(xs.window, ys.window);
                        c.report.magnitude = vd_magnitude(c.report.vd_a);
                    }
                }
                out.push_back(std::move(c));
            }
        }
    }
    return out;
}

inline std::string comparison_csv(const std::vector<Comparison>& rows,
                                  const std::string& group_a_name,
                                  const std::string& group_b_name) {
    CsvBuilder b;
    b.comment("pairwise comparison of window totalTokenRatio (x vs. y)");
    b.comment("direction: median(x) vs. median(y), '=' when not significant");
    b.field(group_a_name);
    b.field(group_b_name);
    b.field("x");
    b.field("y");
    b.field("n_x");
    b.field("n_y");
    b.field("direction");
    b.field("test");
    b.field("p_value");
    b.field("significant");
    b.field("vd_a");
    b.field("magnitude");
    b.end_row();
    for (const Comparison& c : rows) {
        b.field(c.group_a);
        b.field(c.group_b);
        b.field(c.x);
        b.field(c.y);
        b.field(static_cast<std::uint64_t>(c.n_x));
        b.field(static_cast<std::uint64_t>(c.n_y));
        b.field(std::string(direction_symbol(c.report.direction)));
        b.field(c.tested ? std::string(to_string(c.report.chosen)) : std::string("none"));
        b.field(c.report.p_value);
        b.field(static_cast<std::uint64_t>(c.report.significant ? 1 : 0));
        b.field(c.report.vd_a);
        b.field(std::string(to_string(c.report.magnitude)));
        b.end_row();
    }
    return b.str();
}

namespace detail {

inline std::string format_p(double p) {
    if (std::isnan(p))
        return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", p);
    return buf;
}

inline void markdown_family(std::string& md, const std::vector<Comparison>& rows,
                            const std::string& title, const std::string& group_a_name,
                            const std::string& group_b_name) {
    md += "## Pairwise comparison of " + title + "\n\n";
    if (rows.empty()) {
        md += "_No comparable experiment pairs._\n\n";
        return;
    }
    std::string last_group;
    for (const Comparison& c : rows) {
        const std::string group =
            group_a_name + " " + c.group_a + ", " + group_b_name + " " + c.group_b;
        if (group != last_group) {
            if (!last_group.empty())
                md += "\n";
            md += "### " + group + "\n\n";
            md += "| x | vs. | y | p-value | test | A | magnitude |\n";
            md += "|---|:---:|---|---|---|---|---|\n";
            last_group = group;
        }
        const std::string p = format_p(c.report.p_value);
        md += "| " + c.x + " | " + std::string(direction_symbol(c.report.direction)) + " | " +
              c.y + " | " + (c.report.significant ? "**" + p + "**" : p) + " | " +
              (c.tested ? std::string(to_string(c.report.chosen)) : std::string("none")) + " | " +
              format_p(c.report.vd_a) + " | " + std::string(to_string(c.report.magnitude)) +
              " |\n";
    }
    md += "\n";
}

}  // namespace detail

// Writes the three table families (environments, seasons, variants) under
// out_dir as CSVs plus a human-readable report.md. Significant p-values are
// bolded in the markdown, mirroring the usual presentation.
inline void write_report(const std::vector<ExperimentSample>& samples,
                         const std::filesystem::path& out_dir, double alpha = 0.05) {
    if (samples.size() < 2)
        throw std::invalid_argument("report needs at least two experiments");
    std::filesystem::create_directories(out_dir);

    const auto envs = compare_along_axis(samples, "environment", alpha);
    const auto seasons = compare_along_axis(samples, "season", alpha);
    const auto variants = compare_along_axis(samples, "variant", alpha);

    write_file(out_dir / "compare_environments.csv", comparison_csv(envs, "season", "variant"));
    write_file(out_dir / "compare_seasons.csv", comparison_csv(seasons, "environment", "variant"));
    write_file(out_dir / "compare_variants.csv", comparison_csv(variants, "environment", "season"));

    std::string md = "# Pairwise comparisons of window totalTokenRatio\n\n";
    md += "Direction symbols compare medians of x vs. y; `=` means no significant\n";
    md += "difference at alpha = " + detail::format_p(alpha) +
          ". Significant p-values are **bold**.\n\n";
    int dropped = 0;
    for (const ExperimentSample& s : samples)
        dropped += s.dropped_runs;
    if (dropped > 0)
        md += "_Dropped " + std::to_string(dropped) + " run(s) with missing metric windows._\n\n";
    detail::markdown_family(md, envs, "environments", "season", "variant");
    detail::markdown_family(md, seasons, "seasonal change", "environment", "variant");
    detail::markdown_family(md, variants, "learning mechanism", "environment", "season");
    write_file(out_dir / "report.md", md);
}

}  // namespace medea
