#include "copmeas/sample_set.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "copmeas/error.hpp"

namespace copmeas {

SampleSet::SampleSet(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
    if (xs_.size() != ys_.size()) {
        throw Error("ParseError", "x and y columns have different lengths");
    }
    if (xs_.empty()) {
        throw Error("TooFewSamples", "sample set must contain at least one pair");
    }
    for (std::size_t k = 0; k < xs_.size(); ++k) {
        if (!std::isfinite(xs_[k]) || !std::isfinite(ys_[k])) {
            throw Error("NonFiniteValue", "pair " + std::to_string(k + 1) + " is not finite");
        }
    }
}

SampleSet SampleSet::read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error("ParseError", "empty sample file");
    // Tolerate a UTF-8 BOM and trailing CR from other platforms.
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line != "x,y") {
        throw Error("ParseError", "expected header 'x,y', got '" + line + "'");
    }
    std::vector<double> xs, ys;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::stringstream ls(line);
        std::string fx, fy, extra;
        if (!std::getline(ls, fx, ',') || !std::getline(ls, fy, ',')) {
            throw Error("ParseError", "line " + std::to_string(lineno) + ": expected two fields");
        }
        if (std::getline(ls, extra, ',')) {
            throw Error("ParseError", "line " + std::to_string(lineno) + ": too many fields");
        }
        try {
            xs.push_back(std::stod(fx));
            ys.push_back(std::stod(fy));
        } catch (const std::exception&) {
            throw Error("ParseError", "line " + std::to_string(lineno) + ": bad numeric field");
        }
    }
    return SampleSet(std::move(xs), std::move(ys));
}

SampleSet SampleSet::read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("IoError", "cannot open '" + path + "'");
    return read_csv(in);
}

void SampleSet::write_csv(std::ostream& out) const {
    out.precision(17);
    out << "x,y\n";
    for (std::size_t k = 0; k < size(); ++k) out << xs_[k] << ',' << ys_[k] << '\n';
}

}  // namespace copmeas
