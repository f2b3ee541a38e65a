#pragma once

// Golden lattices, the torus R^2 / L and the Z^2 rotation x -> x + n (mod L).

#include "wangtori/golden.hpp"
#include "wangtori/wang.hpp"

#include <map>
#include <string>
#include <vector>

namespace wangtori {

struct Lattice2 {
    GPoint g1;
    GPoint g2;

    GMatrix2 basis() const { return GMatrix2::from_columns(g1, g2); }
    Golden det() const { return basis().det(); }

    /// "gx,gy;hx,hy" with golden literals, e.g. "phi,0;1,phi+3".
    static Lattice2 parse(std::string_view text);
    std::string to_string() const;
    friend bool operator==(const Lattice2&, const Lattice2&) = default;
};

/// A point of R^2 / L stored by its coefficients on the generators, each in [0, 1).
struct TorusPoint {
    Golden c1;
    Golden c2;
    friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
    static bool lex_less(const TorusPoint& l, const TorusPoint& r) {
        return GPoint::lex_less({l.c1, l.c2}, {r.c1, r.c2});
    }
};

struct Window {
    long x0 = 0, x1 = 0;  // inclusive
    long y0 = 0, y1 = 0;  // inclusive

    long width() const { return x1 - x0 + 1; }
    long height() const { return y1 - y0 + 1; }
    bool contains(Vec2i n) const { return n.x >= x0 && n.x <= x1 && n.y >= y0 && n.y <= y1; }
    /// "a:b,c:d"
    static Window parse(std::string_view text);
};

/// R^2 / L together with the cached inverse basis.
class Torus {
public:
    explicit Torus(Lattice2 lattice);

    const Lattice2& lattice() const { return lattice_; }
    const GMatrix2& basis() const { return basis_; }
    const GMatrix2& inverse_basis() const { return inverse_; }

    TorusPoint reduce(const GPoint& p) const;
    GPoint coefficients(const GPoint& p) const { return inverse_ * p; }
    /// Representative of tp inside the fundamental parallelogram.
    GPoint embed(const TorusPoint& tp) const { return basis_ * GPoint{tp.c1, tp.c2}; }
    GPoint lattice_vector(long k, long l) const {
        return lattice_.g1 * Golden(k) + lattice_.g2 * Golden(l);
    }

    TorusPoint rotate(const TorusPoint& tp, Vec2i n) const;
    std::map<Vec2i, TorusPoint> orbit_window(const GPoint& p, const Window& w) const;

private:
    Lattice2 lattice_;
    GMatrix2 basis_;
    GMatrix2 inverse_;
    GPoint step_x_;  // coefficients of (1, 0)
    GPoint step_y_;  // coefficients of (0, 1)
};

TorusPoint reduce_mod_lattice(const GPoint& p, const Lattice2& lattice);
TorusPoint rotate(const TorusPoint& tp, Vec2i n, const Lattice2& lattice);

/// True iff the generators span the same lattice (B1^-1 B2 integral, det +-1).
bool lattice_equivalent(const Lattice2& a, const Lattice2& b);

struct Rotation1D {
    Golden modulus;
    Golden cut;
    Rotation1D(Golden modulus, Golden cut);
};

/// Symbol n is 0 when (x + n) mod modulus lies in [0, cut), else 1.
std::string rotation1d_encode(const Golden& x, const Rotation1D& rot, long n0, long n1);

struct NearReturn {
    long n = 0;
    Golden distance;        // exact circle distance of x + n to x
    double approx = 0;      // numeric rendering
    bool record = false;    // strictly smaller than every earlier distance
};

std::vector<NearReturn> near_return_profile(const Golden& x, const Golden& modulus, long count);

struct DensityReport {
    long boxes_per_side = 0;
    long covered = 0;
    double fraction = 0;
};

/// Fraction of the ceil(1/eps)^2 coefficient boxes hit by R^n(p), |n|_inf <= N.
DensityReport orbit_density_check(const GPoint& p, const Lattice2& lattice, double eps, long N);

}  // namespace wangtori
