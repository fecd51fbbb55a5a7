#include "splash/fields.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace splash {

void write_snapshot(const std::string& path, const DiscreteDomain& dom, const Field& f) {
    std::ofstream out(path);
    if (!out) throw Error("IoFailure", "cannot write snapshot " + path);
    const int n = dom.num_nodes();
    const int comps = f.size() == 2 * n ? 2 : 1;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "snapshot v1 domain=%016" PRIx64 " N=%d comps=%d\n",
                  dom.checksum(), n, comps);
    out << buf;
    for (int id = 0; id < n; ++id) {
        if (comps == 1) {
            std::snprintf(buf, sizeof(buf), "%d %.17g\n", id, f[id]);
        } else {
            std::snprintf(buf, sizeof(buf), "%d %.17g %.17g\n", id, f[id], f[n + id]);
        }
        out << buf;
    }
    if (!out) throw Error("IoFailure", "write failed for " + path);
}

Field read_snapshot(const std::string& path, const DiscreteDomain& dom) {
    std::ifstream in(path);
    if (!in) throw Error("IoFailure", "cannot open snapshot " + path);
    std::string header;
    std::getline(in, header);
    uint64_t sum = 0;
    int n = 0, comps = 0;
    if (std::sscanf(header.c_str(), "snapshot v1 domain=%" SCNx64 " N=%d comps=%d", &sum, &n,
                    &comps) != 3) {
        throw Error("BadFormat", "unrecognized snapshot header in " + path);
    }
    if (sum != dom.checksum() || n != dom.num_nodes()) {
        throw Error("ChecksumMismatch", "snapshot " + path + " belongs to a different domain");
    }
    Field f(comps * n);
    for (int row = 0; row < n; ++row) {
        int id;
        double a, b = 0.0;
        if (comps == 1) {
            if (!(in >> id >> a)) throw Error("BadFormat", "short snapshot " + path);
            f[id] = a;
        } else {
            if (!(in >> id >> a >> b)) throw Error("BadFormat", "short snapshot " + path);
            f[id] = a;
            f[n + id] = b;
        }
    }
    return f;
}

}  // namespace splash
