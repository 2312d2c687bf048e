#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

#include "symineq/geomcore/ball.hpp"
#include "symineq/geomcore/polytope.hpp"
#include "symineq/geomcore/vector.hpp"

namespace symineq
{
// Cell index layout: linear = i0 + s0·(i1 + s1·(i2 + ...)), axis 0 fastest.
struct GridFrame
{
    int dim = 0;
    Vector origin;  // lower corner of cell (0,...,0)
    double cell = 0;
    std::array<int64_t, kMaxSetDim> shape{};

    GridFrame() = default;
    GridFrame(Vector origin, double cell, std::span<const int64_t> shape);

    // Cube [-half, half]^dim rounded outward to whole cells, symmetric about 0.
    static GridFrame symmetric(int dim, double half, double cell);
    // Smallest cell-aligned box (relative to an origin on the lattice cell·Z^dim) covering [lo, hi].
    static GridFrame covering(const Vector& lo, const Vector& hi, double cell);

    int64_t cell_count() const;
    double cell_volume() const;
    void unravel(int64_t linear, int64_t* idx) const;
    int64_t ravel(const int64_t* idx) const;
    Vector center(int64_t linear) const;
    Vector center(const int64_t* idx) const;
    Vector upper() const;
    // Cell containing x, or -1 when outside.
    int64_t locate(const Vector& x) const;
    bool same_as(const GridFrame& o) const;
    // Same cell size and lattice (origins differ by whole cells).
    bool aligned_with(const GridFrame& o) const;
};

class GridSet
{
  public:
    GridSet() = default;
    explicit GridSet(GridFrame frame);
    GridSet(GridFrame frame, std::vector<uint64_t> words);

    static GridSet from_predicate(const GridFrame& frame, const std::function<bool(const Vector&)>& inside);

    const GridFrame& frame() const { return frame_; }
    int dim() const { return frame_.dim; }
    double cell() const { return frame_.cell; }
    bool test(int64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    int64_t count() const;
    double volume() const { return static_cast<double>(count()) * frame_.cell_volume(); }
    bool empty() const { return count() == 0; }
    const std::vector<uint64_t>& words() const { return words_; }
    std::vector<int64_t> occupied() const;
    bool contains(const Vector& x) const;
    Vector occupied_centroid() const;
    double max_center_norm() const;

    template <class F>
    void for_each_occupied(F&& f) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w)
        {
            uint64_t bits = words_[w];
            while (bits)
            {
                int b = std::countr_zero(bits);
                f(static_cast<int64_t>(w * 64 + b));
                bits &= bits - 1;
            }
        }
    }

  private:
    GridFrame frame_;
    std::vector<uint64_t> words_;
};

inline void set_bit(std::vector<uint64_t>& words, int64_t i)
{
    words[i >> 6] |= uint64_t{1} << (i & 63);
}

inline std::vector<uint64_t> empty_words(const GridFrame& f)
{
    return std::vector<uint64_t>(static_cast<std::size_t>((f.cell_count() + 63) / 64), 0);
}

// Cell-centre membership rasterization.
GridSet rasterize(const Polytope& p, const GridFrame& frame);
GridSet rasterize(const Shell& s, const GridFrame& frame);
GridSet rasterize(const Ball& b, const GridFrame& frame);

// Re-grids src onto dst by cell-centre lookup.
GridSet resample(const GridSet& src, const GridFrame& dst);

// Image of src under x -> m·x + shift, sampled at dst centres.
GridSet transform_grid(const GridSet& src, const Matrix& m, const Vector& shift, const GridFrame& dst);

// Bounding frame of the occupied cells of an affine image (one cell of margin).
GridFrame image_frame(const GridSet& src, const Matrix& m, const Vector& shift, double cell);

}  // namespace symineq
