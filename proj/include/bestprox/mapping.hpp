#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bestprox/errors.hpp"
#include "bestprox/metric.hpp"

namespace bestprox {

/// A mapping given explicitly by its graph: image()[i] = T(domain()[i]).
class MappingTable {
public:
    MappingTable() = default;

    MappingTable(std::vector<Point> domain, std::vector<Point> image)
        : domain_(std::move(domain)), image_(std::move(image)) {
        if (domain_.size() != image_.size()) throw InputError("mapping domain and image differ in length");
        for (std::size_t i = 0; i < domain_.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if (domain_[i] == domain_[j]) {
                    throw InputError("mapping lists " + domain_[i].to_string() + " twice");
                }
            }
        }
    }

    std::size_t size() const noexcept { return domain_.size(); }
    const std::vector<Point>& domain() const noexcept { return domain_; }
    const std::vector<Point>& image() const noexcept { return image_; }

    std::optional<std::size_t> find(const Point& x) const {
        for (std::size_t i = 0; i < domain_.size(); ++i) {
            if (domain_[i] == x) return i;
        }
        return std::nullopt;
    }

    bool defined_at(const Point& x) const { return find(x).has_value(); }

    const Point& operator()(const Point& x) const {
        const auto i = find(x);
        if (!i) throw InputError("mapping is not defined at " + x.to_string());
        return image_[*i];
    }

    /// Every domain and image point is a valid point of the space.
    void require_in(const MetricSpace& space) const {
        for (const auto& p : domain_) space.require(p);
        for (const auto& p : image_) space.require(p);
    }

    /// Total on `set`, and every image lands in `codomain`.
    void require_maps(std::span<const Point> set, std::span<const Point> codomain) const {
        for (const auto& x : set) {
            if (!defined_at(x)) throw InputError("mapping is not defined at " + x.to_string());
        }
        for (const auto& y : image_) {
            bool found = false;
            for (const auto& c : codomain) {
                if (c == y) {
                    found = true;
                    break;
                }
            }
            if (!found) throw InputError("image point " + y.to_string() + " lies outside the codomain");
        }
    }

    bool is_self_map() const {
        for (const auto& y : image_) {
            if (!defined_at(y)) return false;
        }
        return true;
    }

private:
    std::vector<Point> domain_;
    std::vector<Point> image_;
};

}  // namespace bestprox
