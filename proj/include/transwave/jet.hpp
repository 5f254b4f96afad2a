#pragma once
// Time-derivative stack (u_0, ..., u_r) at a fixed time.

#include <iosfwd>
#include <vector>

#include "transwave/grid.hpp"

namespace tw {

class Jet {
public:
    Jet() = default;
    explicit Jet(std::vector<GridFunction> entries);

    int order() const { return static_cast<int>(entries_.size()) - 1; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const GridFunction& operator[](std::size_t l) const { return entries_.at(l); }
    const std::vector<GridFunction>& entries() const { return entries_; }
    const TorusGrid& grid() const { return entries_.front().grid(); }

    Jet truncated(std::size_t length) const;

private:
    std::vector<GridFunction> entries_;
};

// Serialization: magic "TWJT", int32 count, then count grid function blobs.
void write_jet(std::ostream& os, const Jet& jet);
Jet read_jet(std::istream& is);

}  // namespace tw
