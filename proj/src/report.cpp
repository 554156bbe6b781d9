#include "doubletop/report.hpp"

#include <cstdio>

namespace doubletop {

uint64_t fnv1a64(const std::string& bytes) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string category_fingerprint(const CategoryData& cat) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(category_to_json_text(cat))));
    return buf;
}

json to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const Vec& v) {
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(to_json(v[i]));
    return a;
}

json to_json(const Mat& m) {
    json a = json::array();
    for (int i = 0; i < m.rows(); ++i) a.push_back(to_json(Vec(m.row(i).transpose())));
    return a;
}

std::string RunReport::to_json_text() const {
    json j;
    j["command"] = command;
    if (!fingerprint.empty()) j["category_fingerprint"] = fingerprint;
    j["residuals"] = residuals;
    j["results"] = results;
    if (emit_timings) j["timings"] = timings;
    return j.dump(2);
}

}  // namespace doubletop
