#include "vklab/table.hpp"

#include <cstdio>

#include <json.hpp>

namespace vklab {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16g", x);
    return buf;
}

void ConvergenceTable::write_csv(std::ostream& os) const {
    os << "V,N,value_re,value_im,limit_re,limit_im,abs_error\n";
    for (const auto& r : rows) {
        os << r.V << ',' << r.N << ',' << format_double(r.value.real()) << ','
           << format_double(r.value.imag()) << ',' << format_double(r.limit.real()) << ','
           << format_double(r.limit.imag()) << ',' << format_double(r.abs_error) << '\n';
    }
}

void ConvergenceTable::write_json(std::ostream& os) const {
    nlohmann::json j;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
        j["rows"].push_back({{"V", r.V},
                             {"N", r.N},
                             {"value_re", r.value.real()},
                             {"value_im", r.value.imag()},
                             {"limit_re", r.limit.real()},
                             {"limit_im", r.limit.imag()},
                             {"abs_error", r.abs_error}});
    }
    j["warnings"] = warnings;
    os << j.dump(2) << '\n';
}

}  // namespace vklab
