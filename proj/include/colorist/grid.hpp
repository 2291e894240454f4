#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace colorist {

/// Raised when a caller violates a documented precondition.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct GridDims {
    int width = 24;
    int height = 14;

    /// Throws DomainError unless both sides are at least 3.
    void validate() const;
    bool contains(int col, int row) const { return col >= 0 && row >= 0 && col < width && row < height; }
    friend bool operator==(const GridDims&, const GridDims&) = default;
};

/// Column grows rightward, row grows downward.
struct Cell {
    int col = 0;
    int row = 0;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct Offset {
    int dc = 0;
    int dr = 0;

    bool is_von_neumann() const { return (dc == 0) != (dr == 0); }
    bool is_diagonal() const { return dc != 0 && dr != 0; }
    friend auto operator<=>(const Offset&, const Offset&) = default;
};

inline constexpr int kMooreSize = 8;

/// The eight Moore offsets in row-major order. Position in this array is the
/// offset's index everywhere else in the project (bandit slot, log field).
inline constexpr std::array<Offset, kMooreSize> kMooreOffsets{{
    {-1, -1}, {0, -1}, {1, -1},
    {-1, 0},           {1, 0},
    {-1, 1},  {0, 1},  {1, 1},
}};

/// Index of `offset` in kMooreOffsets, or nullopt for (0,0) and non-unit deltas.
std::optional<int> moore_index(Offset offset);

inline Cell operator+(Cell c, Offset o) { return {c.col + o.dc, c.row + o.dr}; }

struct PanelPaint {
    int arm = 0;
    int opacity = 1;  // 1..4
    friend bool operator==(const PanelPaint&, const PanelPaint&) = default;
};

/// In-bounds Moore cells around `center`, in kMooreOffsets order.
std::vector<Cell> moore_neighborhood(Cell center, const GridDims& dims);

class GridCanvas {
public:
    explicit GridCanvas(GridDims dims = {});

    const GridDims& dims() const { return dims_; }
    const std::map<Cell, PanelPaint>& painted() const { return painted_; }
    const std::map<Cell, PanelPaint>& proposals() const { return proposals_; }

    /// Replaces all proposals with one per in-bounds Moore offset around
    /// `center`. `paints[i]` belongs to kMooreOffsets[i]; empty slots are skipped.
    /// A proposal on a painted cell shadows it until that cell is inked again.
    void set_proposals(Cell center, const std::array<std::optional<PanelPaint>, kMooreSize>& paints);

    /// Commits the proposal at `cell`. Returns false (and changes nothing)
    /// when `cell` carries no proposal.
    bool ink_panel(Cell cell);

    void clear_proposals() { proposals_.clear(); }

    /// What a renderer shows at `cell`: the proposal if any, else the paint.
    std::optional<PanelPaint> visible(Cell cell) const;

    /// Row-major CSV, one line per row, cells `arm:opacity` or `-1`.
    /// Proposals are transient and not exported.
    std::string export_csv() const;
    void write_csv(std::ostream& out) const;
    static GridCanvas import_csv(const std::string& csv);

    friend bool operator==(const GridCanvas&, const GridCanvas&) = default;

private:
    void check_in_bounds(Cell cell) const;

    GridDims dims_;
    std::map<Cell, PanelPaint> painted_;
    std::map<Cell, PanelPaint> proposals_;
};

}  // namespace colorist
