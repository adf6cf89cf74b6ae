#include "lz/dataset.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lz::dataset {

void ColumnSet::add(std::string name, std::vector<double> values) {
    if (!columns.empty() && values.size() != columns.front().size())
        throw std::invalid_argument("ColumnSet: column length mismatch for " + name);
    names.push_back(std::move(name));
    columns.push_back(std::move(values));
}

std::size_t ColumnSet::rows() const { return columns.empty() ? 0 : columns.front().size(); }

const std::vector<double>& ColumnSet::column(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return columns[i];
    throw std::invalid_argument("ColumnSet: no column named " + name);
}

void Metadata::add(std::string key, std::string value) {
    entries.emplace_back(std::move(key), std::move(value));
}

std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

namespace {

void write_csv(std::ostream& out, const Metadata& meta, const ColumnSet& data) {
    for (const auto& [key, value] : meta.entries) out << "# " << key << "=" << value << "\n";
    for (std::size_t c = 0; c < data.names.size(); ++c)
        out << (c ? "," : "") << data.names[c];
    out << "\n";
    for (std::size_t r = 0; r < data.rows(); ++r) {
        for (std::size_t c = 0; c < data.columns.size(); ++c)
            out << (c ? "," : "") << format_double(data.columns[c][r]);
        out << "\n";
    }
}

void write_json(std::ostream& out, const Metadata& meta, const ColumnSet& data) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json m = nlohmann::ordered_json::object();
    for (const auto& [key, value] : meta.entries) m[key] = value;
    j["meta"] = std::move(m);
    nlohmann::ordered_json d = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < data.names.size(); ++c) d[data.names[c]] = data.columns[c];
    j["data"] = std::move(d);
    out << j.dump(2) << "\n";
}

}  // namespace

void write_dataset(const std::filesystem::path& path, Format format, const Metadata& meta,
                   const ColumnSet& data) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_dataset: cannot open " + path.string());
    if (format == Format::csv)
        write_csv(out, meta, data);
    else
        write_json(out, meta, data);
    if (!out) throw std::runtime_error("write_dataset: write failed for " + path.string());
}

ColumnSet read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_csv: cannot open " + path.string());
    std::string line;
    ColumnSet data;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        std::stringstream row(line);
        std::string cell;
        if (!have_header) {
            while (std::getline(row, cell, ',')) data.names.push_back(cell);
            data.columns.resize(data.names.size());
            have_header = true;
            continue;
        }
        std::size_t c = 0;
        while (std::getline(row, cell, ',')) {
            if (c >= data.columns.size())
                throw std::runtime_error("read_csv: ragged row in " + path.string());
            double value = 0.0;
            const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), value);
            if (res.ec != std::errc{})
                throw std::runtime_error("read_csv: bad number '" + cell + "'");
            data.columns[c++].push_back(value);
        }
    }
    return data;
}

ColumnSet trajectory_columns(const Trajectory& traj) {
    ColumnSet data;
    std::vector<double> tau, re_a, im_a, re_b, im_b;
    for (const auto& s : traj.samples) {
        tau.push_back(s.tau);
        re_a.push_back(s.a.real());
        im_a.push_back(s.a.imag());
        re_b.push_back(s.b.real());
        im_b.push_back(s.b.imag());
    }
    data.add("tau", std::move(tau));
    data.add("re_a", std::move(re_a));
    data.add("im_a", std::move(im_a));
    data.add("re_b", std::move(re_b));
    data.add("im_b", std::move(im_b));
    return data;
}

ColumnSet riccati_columns(const RiccatiSolution& sol) {
    ColumnSet data;
    const std::size_t n = sol.samples.size();
    std::vector<double> tau(n), re_eta(n), im_eta(n), int_re(n), A(n), varphi(n), phi_eta(n),
        psi(n), gamma(n);
    for (std::size_t i = 0; i < n; ++i) {
        tau[i] = sol.samples[i].tau;
        re_eta[i] = sol.samples[i].eta.real();
        im_eta[i] = sol.samples[i].eta.imag();
        int_re[i] = sol.samples[i].H.real();
        A[i] = sol.decomposition[i].A;
        varphi[i] = sol.decomposition[i].varphi;
        phi_eta[i] = sol.decomposition[i].phi_eta;
        psi[i] = sol.decomposition[i].psi;
        gamma[i] = sol.decomposition[i].gamma;
    }
    data.add("tau", std::move(tau));
    data.add("re_eta", std::move(re_eta));
    data.add("im_eta", std::move(im_eta));
    data.add("int_re_eta", std::move(int_re));
    data.add("amplitude", std::move(A));
    data.add("varphi", std::move(varphi));
    data.add("phi_eta", std::move(phi_eta));
    data.add("psi", std::move(psi));
    data.add("gamma", std::move(gamma));
    return data;
}

std::string build_version() {
#ifdef LZ_BUILD_VERSION
    return LZ_BUILD_VERSION;
#else
    return "unknown";
#endif
}

}  // namespace lz::dataset
