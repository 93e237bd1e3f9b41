#include "survboot/dataset.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "survboot/errors.hpp"

namespace survboot {

double SurvivalDataset::missing_fraction(Eigen::Index j) const {
    if (n() == 0) return 0.0;
    Eigen::Index m = 0;
    for (Eigen::Index i = 0; i < n(); ++i)
        if (std::isnan(x(i, j))) ++m;
    return double(m) / double(n());
}

SurvivalDataset SurvivalDataset::select_rows(
    const std::vector<Eigen::Index>& rows) const {
    SurvivalDataset out;
    const Eigen::Index m = Eigen::Index(rows.size());
    out.id.resize(m);
    out.s.resize(m);
    out.delta.resize(m);
    out.x.resize(m, x.cols());
    for (Eigen::Index k = 0; k < m; ++k) {
        const Eigen::Index i = rows[std::size_t(k)];
        out.id(k) = id(i);
        out.s(k) = s(i);
        out.delta(k) = delta(i);
        out.x.row(k) = x.row(i);
    }
    return out;
}

std::vector<Eigen::Index> SurvivalDataset::complete_rows() const {
    std::vector<Eigen::Index> rows;
    rows.reserve(std::size_t(n()));
    for (Eigen::Index i = 0; i < n(); ++i)
        if (row_complete(i)) rows.push_back(i);
    return rows;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void write_csv(const SurvivalDataset& data, std::ostream& os) {
    os << "id,s,delta";
    for (Eigen::Index j = 0; j < data.n_cov(); ++j) os << ",x" << (j + 1);
    os << "\n";
    for (Eigen::Index i = 0; i < data.n(); ++i) {
        os << data.id(i) << ',' << format_double(data.s(i)) << ','
           << data.delta(i);
        for (Eigen::Index j = 0; j < data.n_cov(); ++j) {
            os << ',';
            if (!std::isnan(data.x(i, j))) os << format_double(data.x(i, j));
        }
        os << "\n";
    }
}

void write_csv(const SurvivalDataset& data, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error("cannot open for writing: " + path);
    write_csv(data, f);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

SurvivalDataset read_csv(std::istream& is) {
    std::string line;
    std::vector<std::string> header;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        header = split_csv_line(line);
        break;
    }
    if (header.size() < 4 || header[0] != "id" || header[1] != "s" ||
        header[2] != "delta")
        throw Error("dataset CSV: expected header id,s,delta,x1,...");
    const Eigen::Index p = Eigen::Index(header.size()) - 3;

    std::vector<int> ids;
    std::vector<double> ss;
    std::vector<int> deltas;
    std::vector<double> xs;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto f = split_csv_line(line);
        if (Eigen::Index(f.size()) != p + 3)
            throw Error("dataset CSV: bad field count on line: " + line);
        ids.push_back(std::stoi(f[0]));
        ss.push_back(std::stod(f[1]));
        deltas.push_back(std::stoi(f[2]));
        for (Eigen::Index j = 0; j < p; ++j) {
            const std::string& cell = f[std::size_t(3 + j)];
            xs.push_back(cell.empty() ? std::nan("") : std::stod(cell));
        }
    }

    SurvivalDataset out;
    const Eigen::Index n = Eigen::Index(ids.size());
    out.id.resize(n);
    out.s.resize(n);
    out.delta.resize(n);
    out.x.resize(n, p);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.id(i) = ids[std::size_t(i)];
        out.s(i) = ss[std::size_t(i)];
        out.delta(i) = deltas[std::size_t(i)];
        for (Eigen::Index j = 0; j < p; ++j)
            out.x(i, j) = xs[std::size_t(i * p + j)];
    }
    return out;
}

SurvivalDataset read_csv_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open for reading: " + path);
    return read_csv(f);
}

} // namespace survboot
