#include "finsleroid/sampling.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <regex>

#include "finsleroid/errors.hpp"
#include "finsleroid/horizontal.hpp"
#include "finsleroid/parallel.hpp"

namespace finsleroid {

namespace {

double spread(int i, int n, double lo, double hi) { return n == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (n - 1); }

void append_row(std::string& out, std::initializer_list<double> values) {
    char buf[32];
    bool first = true;
    for (double v : values) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        if (!first) out += ',';
        out += buf;
        first = false;
    }
    out += '\n';
}

}  // namespace

GridSpec parse_grid(const std::string& text) {
    static const std::regex re(R"((\d+)x(\d+)(?:x(\d+))?)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw Error("grid must look like AxBxC, got '" + text + "'");
    GridSpec g;
    try {
        g.a = std::stoi(m[1]);
        g.b = std::stoi(m[2]);
        g.c = m[3].matched ? std::stoi(m[3]) : 1;
    } catch (const std::exception&) {
        throw Error("grid dimensions out of range: '" + text + "'");
    }
    if (g.a <= 0 || g.b <= 0 || g.c <= 0) throw Error("grid dimensions must be positive");
    return g;
}

std::vector<IndicatrixRow> sample_indicatrix(const Space& space, const GridSpec& grid) {
    const Params& p = space.params();
    const double tc = space.solution.theta_c();
    const double half = 0.5 * std::numbers::pi - 0.05;
    std::vector<IndicatrixRow> rows(static_cast<std::size_t>(grid.a) * grid.b * grid.c);
    parallel_for(rows.size(), [&](std::size_t k) {
        const int ip = static_cast<int>(k % grid.c);
        const int it = static_cast<int>((k / grid.c) % grid.b);
        const int ie = static_cast<int>(k / (static_cast<std::size_t>(grid.c) * grid.b));
        IndicatrixRow& r = rows[k];
        r.eta = std::exp(spread(ie, grid.a, std::log(1e-2), std::log(6.0)));
        r.theta = spread(it, grid.b, 0.05, tc - 0.05);
        r.phi = spread(ip, grid.c, -half, half) / std::sqrt(p.Chat) + p.Cstar;
        r.y = indicatrix_point({r.eta, r.theta, r.phi}, space);
        r.F = metric_function(r.y, space);
    });
    return rows;
}

std::string indicatrix_csv(const std::vector<IndicatrixRow>& rows) {
    std::string out = "eta,theta,phi,y0,y1,y2,y3,F\n";
    for (const auto& r : rows) append_row(out, {r.eta, r.theta, r.phi, r.y[0], r.y[1], r.y[2], r.y[3], r.F});
    return out;
}

std::vector<HorizontalRow> sample_horizontal(const Space& space, double lambda, const GridSpec& grid) {
    const Params& p = space.params();
    const Solution& s = space.solution;
    const SectionRadius sr = section_radius(lambda, s);
    const double tc = s.theta_c();
    const double half = 0.5 * std::numbers::pi - 0.05;
    std::vector<HorizontalRow> rows(static_cast<std::size_t>(grid.a) * grid.b * grid.c);
    parallel_for(rows.size(), [&](std::size_t k) {
        const int is = static_cast<int>(k % grid.c);
        const int ip = static_cast<int>((k / grid.c) % grid.b);
        const int it = static_cast<int>(k / (static_cast<std::size_t>(grid.c) * grid.b));
        HorizontalRow& r = rows[k];
        r.theta = spread(it, grid.a, 0.05, tc - 0.05);
        r.phi = spread(ip, grid.b, -half, half) / std::sqrt(p.Chat) + p.Cstar;
        r.scale = grid.c == 1 ? 1.0 : std::exp(spread(is, grid.c, std::log(0.5), std::log(2.0)));
        const Vec4 y = tangent_from_angles({sr.eta_star, r.theta, r.phi}, lambda, space);
        const ScalarVars sv = decompose(y, space.frame);
        r.v = {r.scale * sv.i, r.scale * sv.j, r.scale * sv.i3};
        const HorizontalBundle hb = horizontal_bundle(r.v, s);
        r.r = hb.r;
        r.detR = determinant<3>(hb.R);
        r.min_eig = symmetric_eigenvalues<3>(hb.R)[0];
        r.curv_residual = horizontal_curvature_check(hb, p);
    });
    return rows;
}

std::string horizontal_csv(const std::vector<HorizontalRow>& rows) {
    std::string out = "theta,phi,scale,v1,v2,v3,r,detR,min_eig,curv_residual\n";
    for (const auto& r : rows)
        append_row(out, {r.theta, r.phi, r.scale, r.v[0], r.v[1], r.v[2], r.r, r.detR, r.min_eig, r.curv_residual});
    return out;
}

}  // namespace finsleroid
