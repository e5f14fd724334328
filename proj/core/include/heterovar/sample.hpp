#pragma once

#include <cstddef>
#include <vector>

namespace heterovar {

enum class Design { fixed_equidistant, random_uniform };

//! Regression dataset for the model y_i = f(x_i) + V^{1/2}(x_i) z_i with a
//! sorted design in [0, 1].
struct Sample {
    std::vector<double> x;
    std::vector<double> y;
    Design design = Design::fixed_equidistant;

    std::size_t size() const { return x.size(); }

    //! Throws invalid_config naming the offending field. Checks equal
    //! lengths, n >= 3, strictly increasing x within [0, 1], and exact
    //! x_i = i/n for the fixed-equidistant tag.
    void validate() const;
};

enum class VarianceMethod { difference_based, residual_based };

const char* method_name(VarianceMethod m);

//! Estimated variance curve on an evaluation grid.
struct VarianceEstimate {
    std::vector<double> grid;
    std::vector<double> values;
    double h = 0.0;
    VarianceMethod method = VarianceMethod::difference_based;
    bool truncated = false;
};

//! First-order differences d_i = y_i - y_{i+1}.
struct DifferenceSeries {
    std::vector<double> d;
};

} // namespace heterovar
