// Recomputes the metrics of a CRP file in-process and compares them with a
// report written by `papuf metrics`.
#include <fstream>
#include <iostream>

#include "papuf/io.hpp"
#include "papuf/metrics.hpp"

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: metrics_check <crps.csv> <metrics.txt>\n";
        return 2;
    }
    std::ifstream crp_in(argv[1]);
    std::ifstream report_in(argv[2]);
    const papuf::CrpSet crps = papuf::read_crps(crp_in);
    const papuf::KeyValues expected = papuf::report_key_values(papuf::compute_report(crps));
    const papuf::KeyValues actual = papuf::parse_key_values(report_in);
    int mismatches = 0;
    for (const auto& [key, value] : expected) {
        const auto it = actual.find(key);
        if (it == actual.end() || it->second != value) {
            std::cerr << key << ": module=" << value
                      << " cli=" << (it == actual.end() ? "<missing>" : it->second) << '\n';
            ++mismatches;
        }
    }
    std::cout << expected.size() << " keys compared, " << mismatches << " mismatches\n";
    return mismatches == 0 ? 0 : 1;
}
