#pragma once

#include <optional>
#include <string>
#include <variant>

#include "reeb/error.hpp"
#include "reeb/zalgebra.hpp"

namespace reeb {

/// S^{m-1}.
struct SphereLabel {
    friend bool operator==(const SphereLabel&, const SphereLabel&) = default;
};

/// Closed surface (m = 3). Orientable surfaces are described by genus,
/// non-orientable ones by crosscap count; the other field is ignored.
struct SurfaceLabel {
    int genus = 0;
    bool orientable = true;
    int crosscaps = 0;

    friend bool operator==(const SurfaceLabel& a, const SurfaceLabel& b)
    {
        if (a.orientable != b.orientable)
            return false;
        return a.orientable ? a.genus == b.genus : a.crosscaps == b.crosscaps;
    }
};

/// Closed orientable 3-manifold (m = 4) given by integral surgery on a
/// framed link in S^3, recorded through its symmetric linking matrix.
/// The 0x0 matrix is S^3.
struct SurgeryLabel {
    IntMatrix linking;

    friend bool operator==(const SurgeryLabel&, const SurgeryLabel&) = default;
};

/// Diffeomorphism-type descriptor of a connected regular-level component.
class PreimageLabel {
public:
    using Variant = std::variant<SphereLabel, SurfaceLabel, SurgeryLabel>;

    PreimageLabel() = default;
    PreimageLabel(SphereLabel s) : v_(s) {}
    PreimageLabel(SurfaceLabel s) : v_(s) {}
    PreimageLabel(SurgeryLabel s) : v_(std::move(s)) {}

    static PreimageLabel sphere() { return SphereLabel{}; }
    static PreimageLabel orientable_surface(int genus) { return SurfaceLabel{genus, true, 0}; }
    static PreimageLabel klein_sum(int crosscaps) { return SurfaceLabel{0, false, crosscaps}; }
    static PreimageLabel surgery(IntMatrix m) { return SurgeryLabel{std::move(m)}; }

    const Variant& variant() const noexcept { return v_; }

    const SurfaceLabel* surface() const noexcept { return std::get_if<SurfaceLabel>(&v_); }
    const SurgeryLabel* surgery() const noexcept { return std::get_if<SurgeryLabel>(&v_); }
    bool is_sphere_kind() const noexcept { return std::holds_alternative<SphereLabel>(v_); }

    /// True when the label denotes S^{m-1}: the sphere itself, a genus-0
    /// orientable surface, or the empty surgery.
    bool is_standard_sphere() const
    {
        if (is_sphere_kind())
            return true;
        if (auto* s = surface())
            return s->orientable && s->genus == 0;
        return surgery()->linking.rows() == 0 && surgery()->linking.cols() == 0;
    }

    /// Reason the label is illegal in dimension m, or nullopt when legal.
    std::optional<std::string> illegal_reason(int m) const
    {
        if (auto* s = surface()) {
            if (m != 3)
                return "surface labels require dimension 3";
            if (s->orientable) {
                if (s->genus < 0)
                    return "negative genus";
            } else if (s->crosscaps < 2 || s->crosscaps % 2 != 0) {
                return "non-orientable surfaces must be Klein-bottle sums (even crosscaps >= 2)";
            }
        } else if (auto* g = surgery()) {
            if (m != 4)
                return "surgery labels require dimension 4";
            if (!g->linking.square())
                return "linking matrix must be square";
            if (!g->linking.symmetric())
                return "linking matrix must be symmetric";
        }
        return std::nullopt;
    }

    void require_legal(int m) const
    {
        if (auto why = illegal_reason(m))
            throw LabelError(describe() + ": " + *why);
    }

    bool orientable() const
    {
        auto* s = surface();
        return !s || s->orientable;
    }

    std::string describe() const
    {
        if (is_sphere_kind())
            return "sphere";
        if (auto* s = surface())
            return s->orientable ? "surface(genus " + std::to_string(s->genus) + ")"
                                 : "surface(crosscaps " + std::to_string(s->crosscaps) + ")";
        const auto& m = surgery()->linking;
        std::string out = "surgery[";
        for (std::size_t i = 0; i < m.rows(); ++i) {
            out += i ? ";" : "";
            for (std::size_t j = 0; j < m.cols(); ++j)
                out += (j ? "," : "") + m(i, j).str();
        }
        return out + "]";
    }

    friend bool operator==(const PreimageLabel&, const PreimageLabel&) = default;

private:
    Variant v_;
};

}  // namespace reeb
