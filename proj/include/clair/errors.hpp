#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace clair {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct invalid_parameter : error {
    using error::error;
};

struct not_found : error {
    using error::error;
};

struct missing_layer : error {
    using error::error;
};

struct insufficient_data : error {
    using error::error;
};

struct degenerate_matrix : error {
    using error::error;
};

struct undefined_statistic : error {
    using error::error;
};

// Index build steps have a required order (registry before TF).
struct ordering_error : error {
    using error::error;
};

struct io_error : error {
    using error::error;
};

struct parse_error : error {
    parse_error(const std::string& what, std::size_t line)
        : error(what + " (line " + std::to_string(line) + ")"), line(line) {}
    std::size_t line;
};

// Power iteration hit max_iter; carries the last iterate.
struct convergence_error : error {
    convergence_error(const std::string& what, std::map<std::string, double> iterate)
        : error(what), last_iterate(std::move(iterate)) {}
    std::map<std::string, double> last_iterate;
};

}  // namespace clair
