#pragma once

#include <Eigen/Core>
#include <cmath>
#include <iosfwd>
#include <string>
#include <vector>

namespace survboot {

/// Per-subject survival data: id, observed time s (> 0), event flag
/// delta in {0,1}, and a covariate matrix where NaN marks a missing
/// cell. ids are unique; freshly generated data numbers them 1..n.
struct SurvivalDataset {
    Eigen::VectorXi id;
    Eigen::VectorXd s;
    Eigen::VectorXi delta;
    Eigen::MatrixXd x;

    Eigen::Index n() const { return s.size(); }
    Eigen::Index n_cov() const { return x.cols(); }

    static bool is_missing(double v) { return std::isnan(v); }

    bool row_complete(Eigen::Index i) const {
        for (Eigen::Index j = 0; j < x.cols(); ++j)
            if (std::isnan(x(i, j))) return false;
        return true;
    }

    Eigen::Index count_missing_in_row(Eigen::Index i) const {
        Eigen::Index m = 0;
        for (Eigen::Index j = 0; j < x.cols(); ++j)
            if (std::isnan(x(i, j))) ++m;
        return m;
    }

    /// Fraction of rows missing column j.
    double missing_fraction(Eigen::Index j) const;

    /// New dataset holding the given rows (ids carried over).
    SurvivalDataset select_rows(const std::vector<Eigen::Index>& rows) const;

    std::vector<Eigen::Index> complete_rows() const;
};

/// CSV schema: header `id,s,delta,x1,...,xP`; missing cells are empty
/// fields; floating point written with 10 significant digits. Lines
/// starting with '#' are treated as comments.
void write_csv(const SurvivalDataset& data, std::ostream& os);
void write_csv(const SurvivalDataset& data, const std::string& path);
SurvivalDataset read_csv(std::istream& is);
SurvivalDataset read_csv_file(const std::string& path);

/// Shared float formatting for all CSV output (10 significant digits).
std::string format_double(double v);

} // namespace survboot
