#include "colorist/grid.hpp"

#include <charconv>
#include <ostream>
#include <sstream>
#include <string_view>

namespace colorist {

void GridDims::validate() const {
    if (width < 3 || height < 3) {
        throw DomainError("grid must be at least 3x3, got " + std::to_string(width) + "x" +
                          std::to_string(height));
    }
}

std::optional<int> moore_index(Offset offset) {
    for (int i = 0; i < kMooreSize; ++i) {
        if (kMooreOffsets[i] == offset) return i;
    }
    return std::nullopt;
}

std::vector<Cell> moore_neighborhood(Cell center, const GridDims& dims) {
    if (!dims.contains(center.col, center.row)) {
        throw DomainError("center (" + std::to_string(center.col) + "," + std::to_string(center.row) +
                          ") outside grid");
    }
    std::vector<Cell> cells;
    cells.reserve(kMooreSize);
    for (const Offset& o : kMooreOffsets) {
        const Cell c = center + o;
        if (dims.contains(c.col, c.row)) cells.push_back(c);
    }
    return cells;
}

GridCanvas::GridCanvas(GridDims dims) : dims_(dims) { dims_.validate(); }

void GridCanvas::check_in_bounds(Cell cell) const {
    if (!dims_.contains(cell.col, cell.row)) {
        throw DomainError("cell (" + std::to_string(cell.col) + "," + std::to_string(cell.row) +
                          ") outside grid");
    }
}

void GridCanvas::set_proposals(Cell center,
                               const std::array<std::optional<PanelPaint>, kMooreSize>& paints) {
    check_in_bounds(center);
    proposals_.clear();
    for (int i = 0; i < kMooreSize; ++i) {
        const Cell c = center + kMooreOffsets[i];
        if (!paints[i] || !dims_.contains(c.col, c.row)) continue;
        proposals_[c] = *paints[i];
    }
}

bool GridCanvas::ink_panel(Cell cell) {
    auto it = proposals_.find(cell);
    if (it == proposals_.end()) return false;
    painted_[cell] = it->second;
    proposals_.erase(it);
    return true;
}

std::optional<PanelPaint> GridCanvas::visible(Cell cell) const {
    if (auto it = proposals_.find(cell); it != proposals_.end()) return it->second;
    if (auto it = painted_.find(cell); it != painted_.end()) return it->second;
    return std::nullopt;
}

void GridCanvas::write_csv(std::ostream& out) const {
    for (int r = 0; r < dims_.height; ++r) {
        for (int c = 0; c < dims_.width; ++c) {
            if (c > 0) out << ',';
            auto it = painted_.find({c, r});
            if (it == painted_.end()) {
                out << "-1";
            } else {
                out << it->second.arm << ':' << it->second.opacity;
            }
        }
        out << '\n';
    }
}

std::string GridCanvas::export_csv() const {
    std::ostringstream out;
    write_csv(out);
    return out.str();
}

namespace {

int parse_int(std::string_view text) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw DomainError("bad grid cell '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

}  // namespace

GridCanvas GridCanvas::import_csv(const std::string& csv) {
    std::vector<std::string_view> lines = split(csv, '\n');
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty()) throw DomainError("empty grid dump");

    std::vector<std::vector<std::string_view>> rows;
    for (auto line : lines) {
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        rows.push_back(split(line, ','));
    }
    const GridDims dims{static_cast<int>(rows.front().size()), static_cast<int>(rows.size())};
    GridCanvas canvas(dims);
    for (int r = 0; r < dims.height; ++r) {
        if (static_cast<int>(rows[r].size()) != dims.width) {
            throw DomainError("ragged grid dump at row " + std::to_string(r));
        }
        for (int c = 0; c < dims.width; ++c) {
            const auto field = rows[r][c];
            if (field == "-1") continue;
            const auto colon = field.find(':');
            if (colon == std::string_view::npos) throw DomainError("bad grid cell '" + std::string(field) + "'");
            PanelPaint paint{parse_int(field.substr(0, colon)), parse_int(field.substr(colon + 1))};
            if (paint.arm < 0 || paint.opacity < 1 || paint.opacity > 4) {
                throw DomainError("bad grid cell '" + std::string(field) + "'");
            }
            canvas.painted_[{c, r}] = paint;
        }
    }
    return canvas;
}

}  // namespace colorist
