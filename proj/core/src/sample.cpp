#include "heterovar/sample.hpp"
#include "heterovar/errors.hpp"

#include <string>

namespace heterovar {

void Sample::validate() const {
    if (x.size() != y.size())
        throw invalid_config("sample: x and y lengths differ (" + std::to_string(x.size()) +
                             " vs " + std::to_string(y.size()) + ")");
    if (x.size() < 3)
        throw invalid_config("sample: need at least 3 observations, got " +
                             std::to_string(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < 0.0 || x[i] > 1.0)
            throw invalid_config("sample: x[" + std::to_string(i) + "] outside [0, 1]");
        if (i > 0 && !(x[i] > x[i - 1]))
            throw invalid_config("sample: x must be strictly increasing at index " +
                                 std::to_string(i));
    }
    if (design == Design::fixed_equidistant) {
        const double n = static_cast<double>(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] != static_cast<double>(i + 1) / n)
                throw invalid_config("sample: fixed-equidistant design requires x_i = i/n "
                                     "exactly (index " + std::to_string(i) + ")");
    }
}

const char* method_name(VarianceMethod m) {
    return m == VarianceMethod::difference_based ? "diff" : "fanyao";
}

} // namespace heterovar
