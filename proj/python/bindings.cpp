// SPDX-License-Identifier: Apache-2.0
//
// nfdpc - zero-forcing and dirty-paper-coding precoding for near-field MISO
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "nfdpc/channel.hpp"
#include "nfdpc/dpc.hpp"
#include "nfdpc/experiments.hpp"
#include "nfdpc/geometry.hpp"
#include "nfdpc/rate_region.hpp"
#include "nfdpc/waterfill.hpp"
#include "nfdpc/zf.hpp"

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <array>

namespace py = pybind11;
using namespace nfdpc;

namespace {

py::array_t<double> positions_to_array(const std::vector<Position>& pts) {
    py::array_t<double> out({static_cast<py::ssize_t>(pts.size()), py::ssize_t{3}});
    auto view = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        view(i, 0) = pts[i].x;
        view(i, 1) = pts[i].y;
        view(i, 2) = pts[i].z;
    }
    return out;
}

Position to_position(const std::array<double, 3>& p) { return {p[0], p[1], p[2]}; }

py::array_t<double> boundary_array(const RateRegion& r) {
    py::array_t<double> out({static_cast<py::ssize_t>(r.boundary.size()), py::ssize_t{2}});
    auto view = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < r.boundary.size(); ++i) {
        view(i, 0) = r.boundary[i].r1;
        view(i, 1) = r.boundary[i].r2;
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Zero-forcing and QR-based dirty paper coding for near-field multiuser MISO downlink";

    auto validation = py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    auto numerical = py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<RankDeficientError>(m, "RankDeficientError", numerical.ptr());
    py::register_exception<CapExceededError>(m, "CapExceededError", validation.ptr());

    // geometry
    py::class_<Position>(m, "Position")
        .def(py::init<>())
        .def(py::init([](double x, double y, double z) { return Position{x, y, z}; }), py::arg("x"), py::arg("y"),
             py::arg("z"))
        .def_readwrite("x", &Position::x)
        .def_readwrite("y", &Position::y)
        .def_readwrite("z", &Position::z)
        .def("__repr__", [](const Position& p) {
            return "Position(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ", " + std::to_string(p.z) + ")";
        });

    py::class_<ArrayConfig>(m, "ArrayConfig")
        .def(py::init([](int nx, int ny, double spacing, double wavelength) {
                 ArrayConfig c{nx, ny, spacing, wavelength};
                 c.validate();
                 return c;
             }),
             py::arg("nx"), py::arg("ny"), py::arg("spacing") = 0.5, py::arg("wavelength") = 1.0)
        .def_static("square", &ArrayConfig::square, py::arg("side"), py::arg("spacing") = 0.5,
                    py::arg("wavelength") = 1.0)
        .def_readwrite("nx", &ArrayConfig::nx)
        .def_readwrite("ny", &ArrayConfig::ny)
        .def_readwrite("spacing", &ArrayConfig::spacing)
        .def_readwrite("wavelength", &ArrayConfig::wavelength)
        .def_property_readonly("element_count", &ArrayConfig::element_count)
        .def_property_readonly("aperture", &ArrayConfig::aperture);

    py::enum_<LayoutKind>(m, "LayoutKind")
        .value("CoLinear", LayoutKind::CoLinear)
        .value("Coplanar", LayoutKind::Coplanar)
        .value("Explicit", LayoutKind::Explicit);

    py::class_<UserLayout>(m, "UserLayout")
        .def_static("colinear", &UserLayout::colinear, py::arg("d"), py::arg("s"))
        .def_static("coplanar", &UserLayout::coplanar, py::arg("d"), py::arg("s"))
        .def_static("explicit", [](const std::vector<std::array<double, 3>>& pts) {
            std::vector<Position> p;
            for (const auto& a : pts) p.push_back(to_position(a));
            return UserLayout::explicit_positions(std::move(p));
        })
        .def_readonly("kind", &UserLayout::kind)
        .def_readonly("d", &UserLayout::d)
        .def_readonly("s", &UserLayout::s)
        .def_property_readonly("user_count", &UserLayout::user_count);

    m.def("build_array", [](const ArrayConfig& c) { return positions_to_array(build_array(c)); },
          "Element positions as an (N, 3) array, row-major in (i, j)");
    m.def("build_users", [](const UserLayout& l) { return positions_to_array(build_users(l)); },
          "User positions as a (K, 3) array");
    m.def("far_field_boundary", &far_field_boundary, py::arg("aperture"), py::arg("wavelength"));

    // channel
    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def(py::init([](const ArrayConfig& a, const UserLayout& l, double pt, double noise) {
                 ScenarioConfig c{a, l, pt, noise};
                 c.validate();
                 return c;
             }),
             py::arg("array"), py::arg("layout"), py::arg("pt") = 10.0, py::arg("noise_power") = 1.0)
        .def_readwrite("array", &ScenarioConfig::array)
        .def_readwrite("layout", &ScenarioConfig::layout)
        .def_readwrite("pt", &ScenarioConfig::pt)
        .def_readwrite("noise_power", &ScenarioConfig::noise_power);

    py::class_<ChannelMatrix>(m, "ChannelMatrix")
        .def(py::init<CRowMatrix>(), py::arg("entries"))
        .def_property_readonly("entries", &ChannelMatrix::entries)
        .def_property_readonly("users", &ChannelMatrix::users)
        .def_property_readonly("antennas", &ChannelMatrix::antennas)
        .def("row_norms_squared", &ChannelMatrix::row_norms_squared);

    m.def("channel_coefficient",
          [](const std::array<double, 3>& t, const std::array<double, 3>& r, double wavelength) {
              return channel_coefficient(to_position(t), to_position(r), wavelength);
          },
          py::arg("t"), py::arg("r"), py::arg("wavelength") = 1.0);
    m.def("build_channel", py::overload_cast<const ScenarioConfig&>(&build_channel), py::arg("scenario"));
    m.def("channel_gram", &channel_gram);

    // water-filling
    py::class_<PowerAllocation>(m, "PowerAllocation")
        .def_readonly("q", &PowerAllocation::q)
        .def_readonly("rates", &PowerAllocation::rates)
        .def_readonly("sum_rate", &PowerAllocation::sum_rate)
        .def_readonly("water_level_dual", &PowerAllocation::water_level_dual)
        .def_readonly("active_users", &PowerAllocation::active_users);

    m.def("solve_waterfill",
          [](std::vector<double> gains, std::vector<double> weights, double budget, double threshold) {
              return solve_waterfill({std::move(gains), std::move(weights), budget, threshold});
          },
          py::arg("gains"), py::arg("weights"), py::arg("budget"), py::arg("zero_gain_threshold") = 1e-15);

    // zero forcing
    py::class_<ZfPrecoder>(m, "ZfPrecoder")
        .def_readonly("f", &ZfPrecoder::f)
        .def_readonly("alpha", &ZfPrecoder::alpha)
        .def_readonly("condition_estimate", &ZfPrecoder::condition_estimate);
    m.def("build_zf", [](const ChannelMatrix& h, double max_condition) { return build_zf(h, {max_condition}); },
          py::arg("h"), py::arg("max_condition") = 1e12);
    m.def("zf_sum_rate",
          [](const ChannelMatrix& h, double pt, double noise) { return zf_sum_rate(h, pt, noise); },
          py::arg("h"), py::arg("pt"), py::arg("noise_power") = 1.0);

    // dirty paper coding
    py::class_<EncodingOrder>(m, "EncodingOrder")
        .def(py::init<std::vector<std::size_t>>(), py::arg("users"), "0-based users, slot order")
        .def_static("identity", &EncodingOrder::identity)
        .def_static("parse", &EncodingOrder::parse, "1-based label such as '2-1'")
        .def_property_readonly("users", &EncodingOrder::users)
        .def("label", &EncodingOrder::label)
        .def("__eq__", [](const EncodingOrder& a, const EncodingOrder& b) { return a == b; })
        .def("__repr__", [](const EncodingOrder& o) { return "EncodingOrder('" + o.label() + "')"; });

    py::class_<DpcDecomposition>(m, "DpcDecomposition")
        .def_readonly("order", &DpcDecomposition::order)
        .def_readonly("q_basis", &DpcDecomposition::q_basis)
        .def_readonly("r_upper", &DpcDecomposition::r_upper)
        .def_readonly("diag_gains", &DpcDecomposition::diag_gains);

    py::class_<DpcSolution>(m, "DpcSolution")
        .def_readonly("decomposition", &DpcSolution::decomposition)
        .def_readonly("allocation", &DpcSolution::allocation)
        .def_readonly("sum_rate", &DpcSolution::sum_rate)
        .def_property_readonly("order", &DpcSolution::order)
        .def("user_powers", &DpcSolution::user_powers)
        .def("user_rates", &DpcSolution::user_rates);

    m.def("decompose", &decompose, py::arg("h"), py::arg("order"));
    m.def("dpc_sum_rate", &dpc_sum_rate, py::arg("h"), py::arg("order"), py::arg("pt"), py::arg("noise_power") = 1.0);
    m.def("best_order_exhaustive",
          [](const ChannelMatrix& h, double pt, double noise, std::size_t cap) {
              ExhaustiveOptions o;
              o.max_users = cap;
              return best_order_exhaustive(h, pt, noise, o);
          },
          py::arg("h"), py::arg("pt"), py::arg("noise_power") = 1.0, py::arg("max_users") = 8);
    m.def("greedy_order", &greedy_order);
    m.def("best_order_greedy", &best_order_greedy, py::arg("h"), py::arg("pt"), py::arg("noise_power") = 1.0);

    // rate regions
    py::enum_<Scheme>(m, "Scheme").value("ZF", Scheme::Zf).value("DPC", Scheme::Dpc);
    py::class_<RateRegion>(m, "RateRegion")
        .def_readonly("scheme", &RateRegion::scheme)
        .def_readonly("order", &RateRegion::order)
        .def_readonly("area", &RateRegion::area)
        .def_readonly("r1_max", &RateRegion::r1_max)
        .def_readonly("r2_max", &RateRegion::r2_max)
        .def_property_readonly("boundary", &boundary_array, "(M, 2) array of (r1, r2)");

    m.def("zf_region",
          [](const ChannelMatrix& h, double pt, std::size_t m_points, double noise) {
              return zf_region(h, pt, m_points, noise);
          },
          py::arg("h"), py::arg("pt"), py::arg("m_points") = kDefaultRegionPoints, py::arg("noise_power") = 1.0);
    m.def("dpc_region", &dpc_region, py::arg("h"), py::arg("pt"), py::arg("order"),
          py::arg("m_points") = kDefaultRegionPoints, py::arg("noise_power") = 1.0);
    m.def("region_union", [](const std::vector<RateRegion>& rs) { return region_union(rs); });
    m.def("convex_hull", &convex_hull);
    m.def("area_improvement", &area_improvement);

    // experiments
    py::enum_<CellStatus>(m, "CellStatus")
        .value("Ok", CellStatus::Ok)
        .value("ZfRankDeficient", CellStatus::ZfRankDeficient);

    py::class_<SweepCell>(m, "SweepCell")
        .def_readonly("d", &SweepCell::d)
        .def_readonly("s", &SweepCell::s)
        .def_readonly("zf_sum_rate", &SweepCell::zf_sum_rate)
        .def_readonly("dpc_sum_rate", &SweepCell::dpc_sum_rate)
        .def_readonly("diff", &SweepCell::diff)
        .def_readonly("status", &SweepCell::status);

    py::class_<GainRow>(m, "GainRow")
        .def_readonly("s", &GainRow::s)
        .def_readonly("status", &GainRow::status)
        .def_readonly("alpha_1", &GainRow::alpha_1)
        .def_readonly("alpha_2", &GainRow::alpha_2)
        .def_readonly("r11_sq", &GainRow::r11_sq)
        .def_readonly("r22_sq", &GainRow::r22_sq)
        .def_readonly("order", &GainRow::order);

    m.def("run_contour",
          [](std::vector<double> d_values, std::vector<double> s_values, int nx, LayoutKind layout, double pt,
             std::size_t workers) {
              SweepGrid g;
              g.d_values = std::move(d_values);
              g.s_values = std::move(s_values);
              g.nx = nx;
              g.layout = layout;
              g.pt = pt;
              py::gil_scoped_release release;
              return run_contour(g, workers);
          },
          py::arg("d_values"), py::arg("s_values"), py::arg("nx"), py::arg("layout") = LayoutKind::CoLinear,
          py::arg("pt") = 10.0, py::arg("workers") = 1);
    m.def("run_gain_profile",
          [](double d, std::vector<double> s_values, int nx, double pt, LayoutKind layout, std::size_t workers) {
              py::gil_scoped_release release;
              return run_gain_profile(d, s_values, nx, pt, layout, workers);
          },
          py::arg("d"), py::arg("s_values"), py::arg("nx"), py::arg("pt") = 10.0,
          py::arg("layout") = LayoutKind::CoLinear, py::arg("workers") = 1);

    py::enum_<ScenarioMode>(m, "ScenarioMode")
        .value("Region", ScenarioMode::Region)
        .value("SumRate", ScenarioMode::SumRate);
    m.def("run_scenario",
          [](const ScenarioConfig& cfg, ScenarioMode mode, const std::filesystem::path& out_dir, std::size_t points,
             bool greedy) {
              ScenarioOptions o;
              o.points = points;
              o.greedy = greedy;
              return run_scenario(cfg, mode, out_dir, o);
          },
          py::arg("config"), py::arg("mode"), py::arg("out_dir"), py::arg("points") = kDefaultRegionPoints,
          py::arg("greedy") = false);
}
