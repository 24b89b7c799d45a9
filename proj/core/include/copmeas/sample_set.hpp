#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace copmeas {

/// Paired observations (x_k, y_k), assumed drawn from a continuous joint
/// distribution. Values must be finite; length >= 1.
class SampleSet {
public:
    SampleSet(std::vector<double> xs, std::vector<double> ys);

    std::size_t size() const { return xs_.size(); }
    double x(std::size_t k) const { return xs_[k]; }
    double y(std::size_t k) const { return ys_[k]; }
    std::span<const double> xs() const { return xs_; }
    std::span<const double> ys() const { return ys_; }

    /// CSV with header "x,y" followed by decimal rows.
    static SampleSet read_csv(std::istream& in);
    static SampleSet read_csv_file(const std::string& path);
    void write_csv(std::ostream& out) const;

private:
    std::vector<double> xs_, ys_;
};

}  // namespace copmeas
