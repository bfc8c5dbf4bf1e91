/// @file field.hpp
/// @brief Per-element modal coefficient storage for one unknown.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ldgflow {

enum class MeshComponent { surface, freeflow, darcy };

/// Modal DG field: one coefficient block per element of the host component.
/// Surface fields have order+1 modes per element, 2D fields (order+1)^2.
struct DGField {
    std::string name;
    MeshComponent component = MeshComponent::freeflow;
    int order = 0;
    int n_modes = 0;
    int n_elem = 0;
    std::uint64_t mesh_id = 0;
    std::vector<double> coef;

    DGField() = default;
    DGField(std::string name_, MeshComponent comp, int order_, int n_elem_,
            std::uint64_t mesh_id_)
        : name(std::move(name_)), component(comp), order(order_), n_elem(n_elem_),
          mesh_id(mesh_id_) {
        if (order < 0) throw std::invalid_argument("DGField: negative order");
        n_modes = comp == MeshComponent::surface ? order + 1 : (order + 1) * (order + 1);
        coef.assign(static_cast<std::size_t>(n_elem) * n_modes, 0.0);
    }

    double* elem(int e) { return coef.data() + static_cast<std::size_t>(e) * n_modes; }
    const double* elem(int e) const {
        return coef.data() + static_cast<std::size_t>(e) * n_modes;
    }

    double max_abs() const {
        double m = 0.0;
        for (double c : coef) m = std::max(m, std::abs(c));
        return m;
    }
};

} // namespace ldgflow
