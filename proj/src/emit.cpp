#include "freering/emit.hpp"

#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

namespace freering {

namespace {

using nlohmann::ordered_json;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* class_label(DomainClass c) {
    switch (c) {
        case DomainClass::ThetaOut: return "out";
        case DomainClass::ThetaIn: return "in";
        default: return "none";
    }
}

}  // namespace

std::string eigenvalues_csv(const std::vector<Complex>& eigenvalues) {
    std::string out = "re,im\n";
    for (const Complex ev : eigenvalues) {
        out += num(ev.real());
        out += ',';
        out += num(ev.imag());
        out += '\n';
    }
    return out;
}

std::string spectrum_metadata_json(const ModelSpec& model, long n, std::uint64_t seed) {
    ordered_json j;
    j["seed"] = seed;
    j["n"] = n;
    j["model_hash"] = model_hash(model);
    return j.dump(2) + "\n";
}

std::string domain_grid_csv(const DomainGrid& grid) {
    std::string out = "x,y,class\n";
    for (int row = 0; row < grid.resolution; ++row)
        for (int col = 0; col < grid.resolution; ++col) {
            out += num(grid.x_at(col));
            out += ',';
            out += num(grid.y_at(row));
            out += ',';
            out += class_label(grid.at(row, col));
            out += '\n';
        }
    return out;
}

std::string subordination_csv(const std::vector<SubordinationSolution>& solutions) {
    std::string out = "x,y,re_omega1,im_omega1,re_omega2,im_omega2,re_G,im_G,residual\n";
    for (const auto& s : solutions) {
        out += num(s.z.real());
        out += ',';
        out += num(s.z.imag());
        out += ',';
        out += num(s.omega1.real());
        out += ',';
        out += num(s.omega1.imag());
        out += ',';
        out += num(s.omega2.real());
        out += ',';
        out += num(s.omega2.imag());
        out += ',';
        out += num(s.g_value.real());
        out += ',';
        out += num(s.g_value.imag());
        out += ',';
        out += num(s.residual);
        out += '\n';
    }
    return out;
}

std::string report_json(const OutlierReport& report) {
    ordered_json j;
    j["n"] = report.n;
    j["trials"] = report.trials;
    j["tol"] = report.tol;
    ordered_json spikes = ordered_json::array();
    for (const auto& s : report.per_spike) {
        ordered_json row;
        row["spike"] = {s.spike.real(), s.spike.imag()};
        row["match_count"] = s.match_count;
        row["mean_distance"] = s.mean_distance;
        row["max_distance"] = s.max_distance;
        spikes.push_back(row);
    }
    j["per_spike"] = spikes;
    j["inner_violations"] = report.inner_violations;
    j["stability_margin"] = report.stability_margin;
    j["seeds"] = report.seeds;
    return j.dump(2) + "\n";
}

OutlierReport report_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    OutlierReport report;
    report.n = j.at("n").get<long>();
    report.trials = j.at("trials").get<int>();
    report.tol = j.at("tol").get<double>();
    for (const auto& row : j.at("per_spike")) {
        SpikeTrialStats s;
        s.spike = Complex(row.at("spike")[0].get<double>(), row.at("spike")[1].get<double>());
        s.match_count = row.at("match_count").get<int>();
        s.mean_distance = row.at("mean_distance").get<double>();
        s.max_distance = row.at("max_distance").get<double>();
        report.per_spike.push_back(s);
    }
    report.inner_violations = j.at("inner_violations").get<int>();
    report.stability_margin = j.at("stability_margin").get<double>();
    report.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    return report;
}

std::string certificate_json(const SupportGapCertificate& cert) {
    ordered_json j;
    j["side"] = cert.side == HSide::H1 ? "h1" : "h2";
    j["gamma"] = cert.gamma;
    j["k_const"] = cert.k_const;
    j["epsilon"] = cert.epsilon;
    return j.dump(2) + "\n";
}

std::string scatter_svg(const DomainGrid& grid, const std::vector<Complex>& eigenvalues,
                        const std::vector<Complex>& spikes) {
    const int size = 720;
    const BBox& b = grid.bbox;
    const auto sx = [&](double x) { return (x - b.xmin) / (b.xmax - b.xmin) * size; };
    const auto sy = [&](double y) { return (b.ymax - y) / (b.ymax - b.ymin) * size; };

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      std::to_string(size) + "\" height=\"" + std::to_string(size) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

    const double cell_w = static_cast<double>(size) / grid.resolution;
    for (int row = 0; row < grid.resolution; ++row)
        for (int col = 0; col < grid.resolution; ++col) {
            const DomainClass c = grid.at(row, col);
            if (c == DomainClass::Neither) continue;
            const char* fill = (c == DomainClass::ThetaOut) ? "#dce9f7" : "#fdeacc";
            svg += "<rect x=\"" + num(sx(grid.x_at(col)) - cell_w / 2) + "\" y=\"" +
                   num(sy(grid.y_at(row)) - cell_w / 2) + "\" width=\"" + num(cell_w) +
                   "\" height=\"" + num(cell_w) + "\" fill=\"" + fill + "\"/>\n";
        }

    for (const Complex ev : eigenvalues)
        svg += "<circle cx=\"" + num(sx(ev.real())) + "\" cy=\"" + num(sy(ev.imag())) +
               "\" r=\"1.6\" fill=\"#1f3b70\"/>\n";

    for (const Complex s : spikes) {
        const double cx = sx(s.real()), cy = sy(s.imag()), arm = 6.0;
        svg += "<path d=\"M " + num(cx - arm) + " " + num(cy) + " H " + num(cx + arm) + " M " +
               num(cx) + " " + num(cy - arm) + " V " + num(cy + arm) +
               "\" stroke=\"#c03030\" stroke-width=\"2\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write \"" + path + "\"");
    out << content;
}

}  // namespace freering
