#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "colorist/grid.hpp"

namespace colorist {
namespace {

constexpr GridDims kDefault{24, 14};

std::array<std::optional<PanelPaint>, kMooreSize> uniform_paints(int arm, int opacity = 2) {
    std::array<std::optional<PanelPaint>, kMooreSize> paints;
    paints.fill(PanelPaint{arm, opacity});
    return paints;
}

TEST(MooreOffsets, EightOffsetsFourCardinalFourDiagonal) {
    std::set<Offset> unique(kMooreOffsets.begin(), kMooreOffsets.end());
    EXPECT_EQ(unique.size(), 8u);
    EXPECT_FALSE(unique.contains(Offset{0, 0}));
    EXPECT_EQ(std::count_if(kMooreOffsets.begin(), kMooreOffsets.end(), [](Offset o) { return o.is_von_neumann(); }), 4);
    EXPECT_EQ(std::count_if(kMooreOffsets.begin(), kMooreOffsets.end(), [](Offset o) { return o.is_diagonal(); }), 4);
    EXPECT_FALSE(moore_index({0, 0}));
    EXPECT_FALSE(moore_index({2, 0}));
    EXPECT_EQ(moore_index({0, -1}), 1);
}

TEST(MooreNeighborhood, InteriorCellHasEightNeighborsRowMajor) {
    const auto cells = moore_neighborhood({5, 5}, kDefault);
    const std::vector<Cell> expected{{4, 4}, {5, 4}, {6, 4}, {4, 5}, {6, 5}, {4, 6}, {5, 6}, {6, 6}};
    EXPECT_EQ(cells, expected);
}

TEST(MooreNeighborhood, CornersAreClamped) {
    const std::vector<Cell> top_left{{1, 0}, {0, 1}, {1, 1}};
    EXPECT_EQ(moore_neighborhood({0, 0}, kDefault), top_left);
    const std::vector<Cell> bottom_right{{22, 12}, {23, 12}, {22, 13}};
    EXPECT_EQ(moore_neighborhood({23, 13}, kDefault), bottom_right);
    EXPECT_EQ(moore_neighborhood({10, 0}, kDefault).size(), 5u);
}

TEST(MooreNeighborhood, OutOfBoundsCenterThrows) {
    EXPECT_THROW(moore_neighborhood({24, 0}, kDefault), DomainError);
    EXPECT_THROW(moore_neighborhood({-1, 3}, kDefault), DomainError);
}

TEST(GridDims, RejectsTooSmall) {
    EXPECT_THROW(GridCanvas(GridDims{2, 5}), DomainError);
    EXPECT_NO_THROW(GridCanvas(GridDims{3, 3}));
}

TEST(GridCanvas, SetProposalsInteriorAndCorner) {
    GridCanvas canvas(kDefault);
    canvas.set_proposals({5, 5}, uniform_paints(3));
    EXPECT_EQ(canvas.proposals().size(), 8u);
    canvas.set_proposals({0, 0}, uniform_paints(3));
    EXPECT_EQ(canvas.proposals().size(), 3u);
    EXPECT_TRUE(canvas.painted().empty());
}

TEST(GridCanvas, InkCommitsProposal) {
    GridCanvas canvas(kDefault);
    auto paints = uniform_paints(0);
    paints[*moore_index({0, -1})] = PanelPaint{3, 2};
    canvas.set_proposals({5, 5}, paints);
    ASSERT_TRUE(canvas.ink_panel({5, 4}));
    EXPECT_EQ(canvas.painted().at({5, 4}), (PanelPaint{3, 2}));
    EXPECT_FALSE(canvas.proposals().contains({5, 4}));
}

TEST(GridCanvas, InkWithoutProposalIsFlaggedNoOp) {
    GridCanvas canvas(kDefault);
    canvas.set_proposals({5, 5}, uniform_paints(3));
    ASSERT_TRUE(canvas.ink_panel({5, 4}));
    canvas.clear_proposals();
    const auto before = canvas;
    EXPECT_FALSE(canvas.ink_panel({5, 4}));
    EXPECT_FALSE(canvas.ink_panel({0, 0}));
    EXPECT_EQ(canvas, before);
}

TEST(GridCanvas, ProposalShadowsPaintUntilReinked) {
    GridCanvas canvas(kDefault);
    canvas.set_proposals({5, 5}, uniform_paints(3, 1));
    ASSERT_TRUE(canvas.ink_panel({5, 4}));

    // Re-center so (5,4) is in the new ring with a different color.
    canvas.set_proposals({5, 3}, uniform_paints(8, 4));
    EXPECT_EQ(canvas.visible({5, 4}), (PanelPaint{8, 4}));
    EXPECT_EQ(canvas.painted().at({5, 4}), (PanelPaint{3, 1}));

    // Moving away restores the committed paint.
    canvas.set_proposals({20, 10}, uniform_paints(8, 4));
    EXPECT_EQ(canvas.visible({5, 4}), (PanelPaint{3, 1}));

    canvas.set_proposals({5, 3}, uniform_paints(8, 4));
    ASSERT_TRUE(canvas.ink_panel({5, 4}));
    EXPECT_EQ(canvas.painted().at({5, 4}), (PanelPaint{8, 4}));
}

TEST(GridExport, EmptyCanvasIsAllUnpainted) {
    GridCanvas canvas(GridDims{3, 3});
    EXPECT_EQ(canvas.export_csv(), "-1,-1,-1\n-1,-1,-1\n-1,-1,-1\n");
}

TEST(GridExport, FirstEntryCarriesArmAndOpacity) {
    GridCanvas canvas(kDefault);
    auto paints = uniform_paints(0);
    paints[*moore_index({-1, -1})] = PanelPaint{7, 2};
    canvas.set_proposals({1, 1}, paints);
    ASSERT_TRUE(canvas.ink_panel({0, 0}));
    const auto csv = canvas.export_csv();
    EXPECT_EQ(csv.substr(0, 4), "7:2,");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 14);
}

TEST(GridExport, ImportRejectsMalformed) {
    EXPECT_THROW(GridCanvas::import_csv(""), DomainError);
    EXPECT_THROW(GridCanvas::import_csv("-1,-1,-1\n-1,-1\n-1,-1,-1\n"), DomainError);
    EXPECT_THROW(GridCanvas::import_csv("-1,x,-1\n-1,-1,-1\n-1,-1,-1\n"), DomainError);
    EXPECT_THROW(GridCanvas::import_csv("-1,3:9,-1\n-1,-1,-1\n-1,-1,-1\n"), DomainError);
}

// Round trip over random canvases built only through the public inking path.
TEST(GridExport, RoundTripPropertyOverRandomCanvases) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const GridDims dims{3 + static_cast<int>(rng() % 30), 3 + static_cast<int>(rng() % 20)};
        GridCanvas canvas(dims);
        const int moves = static_cast<int>(rng() % 200);
        for (int m = 0; m < moves; ++m) {
            const Cell center{static_cast<int>(rng() % dims.width), static_cast<int>(rng() % dims.height)};
            std::array<std::optional<PanelPaint>, kMooreSize> paints;
            for (auto& p : paints) p = PanelPaint{static_cast<int>(rng() % 10), 1 + static_cast<int>(rng() % 4)};
            canvas.set_proposals(center, paints);
            const auto ring = moore_neighborhood(center, dims);
            canvas.ink_panel(ring[rng() % ring.size()]);
        }
        canvas.clear_proposals();
        EXPECT_EQ(GridCanvas::import_csv(canvas.export_csv()), canvas) << "trial " << trial;
    }
}

TEST(GridCanvas, PaintedMapIsMonotone) {
    std::mt19937 rng(11);
    GridCanvas canvas(kDefault);
    std::size_t previous = 0;
    for (int m = 0; m < 2000; ++m) {
        const Cell center{static_cast<int>(rng() % 24), static_cast<int>(rng() % 14)};
        canvas.set_proposals(center, uniform_paints(static_cast<int>(rng() % 10)));
        EXPECT_LE(canvas.proposals().size(), 8u);
        for (const auto& [cell, paint] : canvas.proposals()) {
            EXPECT_TRUE(moore_index({cell.col - center.col, cell.row - center.row}).has_value());
        }
        canvas.ink_panel(center + kMooreOffsets[rng() % 8]);
        EXPECT_GE(canvas.painted().size(), previous);
        previous = canvas.painted().size();
    }
}

}  // namespace
}  // namespace colorist
