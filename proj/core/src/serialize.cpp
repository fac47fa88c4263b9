#include "photoncorr/serialize.hpp"

#include <cstdio>

namespace photoncorr {

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string subset_key(std::uint64_t ground_mask) {
    std::string key;
    for (int l = 1; ground_mask != 0; ++l, ground_mask >>= 1) {
        if (ground_mask & 1) {
            if (!key.empty()) {
                key += ',';
            }
            key += std::to_string(l);
        }
    }
    return key;
}

std::string state_to_json(const PureState& state) {
    std::string out = "{\"n_atoms\":" + std::to_string(state.n_atoms()) + ",\"amplitudes\":{";
    bool first = true;
    for (const auto& [mask, amp] : state.amplitudes()) {
        if (!first) {
            out += ',';
        }
        first = false;
        out += '"' + subset_key(mask) + "\":[" + format_double(amp.real()) + ',' +
               format_double(amp.imag()) + ']';
    }
    out += "}}";
    return out;
}

std::string sweep_to_csv(const SweepResult& sweep) {
    std::string out = "theta2,g_value,g_normalized\n";
    for (std::size_t i = 0; i < sweep.angles.size(); ++i) {
        out += format_double(sweep.angles[i]) + ',' + format_double(sweep.values[i]) + ',' +
               format_double(sweep.normalized[i]) + '\n';
    }
    return out;
}

}  // namespace photoncorr
