#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "needlets/field.hpp"
#include "needlets/gof.hpp"
#include "needlets/grid.hpp"
#include "needlets/harmonics.hpp"
#include "needlets/kernel.hpp"
#include "needlets/scale.hpp"
#include "needlets/window.hpp"

namespace py = pybind11;
using namespace needlets;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<double> to_vector(const DoubleArray& arr) {
  return std::vector<double>(arr.data(), arr.data() + arr.size());
}

DoubleArray to_array(const std::vector<double>& v) {
  DoubleArray out({static_cast<py::ssize_t>(v.size())});
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

HarmonicCoefficients to_alm(int l_max, const DoubleArray& arr) {
  HarmonicCoefficients alm(l_max);
  if (static_cast<std::size_t>(arr.size()) != alm.values.size()) {
    throw std::invalid_argument("coefficient array size must be (l_max+1)^2 - 1");
  }
  std::copy(arr.data(), arr.data() + arr.size(), alm.values.begin());
  return alm;
}

Vec3 to_vec3(const DoubleArray& arr) {
  if (arr.size() != 3) throw std::invalid_argument("expected a 3-vector");
  return {arr.data()[0], arr.data()[1], arr.data()[2]};
}

PowerSpectrum make_oscillatory(double alpha,
                               const std::vector<std::array<double, 4>>& terms) {
  std::vector<OscillatoryTerm> converted;
  converted.reserve(terms.size());
  for (const auto& t : terms) converted.push_back({t[0], t[1], t[2], t[3]});
  return PowerSpectrum::oscillatory(alpha, std::move(converted));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Flexible-bandwidth spherical needlets";


  py::class_<ScaleSequence>(m, "ScaleSequence")
      .def_static("geometric", &ScaleSequence::geometric, py::arg("bandwidth"),
                  py::arg("j_max"))
      .def_static("custom",
                  [](const std::vector<double>& v) {
                    return ScaleSequence::custom(v);
                  },
                  py::arg("values"))
      .def_property_readonly("j_max", &ScaleSequence::j_max)
      .def("value", &ScaleSequence::value, py::arg("j"))
      .def("values",
           [](const ScaleSequence& s) {
             auto v = s.values();
             return std::vector<double>(v.begin(), v.end());
           })
      .def("support_interval", &ScaleSequence::support_interval, py::arg("j"));

  py::class_<WindowFamily>(m, "WindowFamily")
      .def(py::init<ScaleSequence>(), py::arg("scales"))
      .def_property_readonly("count", &WindowFamily::count)
      .def("scales", &WindowFamily::scales,
           py::return_value_policy::reference_internal)
      .def("step", &WindowFamily::step, py::arg("j"), py::arg("u"))
      .def("value", &WindowFamily::value, py::arg("j"), py::arg("u"))
      .def("value_at", &WindowFamily::value_at, py::arg("j"), py::arg("ell"))
      .def("multipoles",
           [](const WindowFamily& w, int j) {
             auto s = w.multipoles(j);
             return std::vector<int>(s.begin(), s.end());
           },
           py::arg("j"))
      .def("partition_deviation",
           [](const WindowFamily& w, const std::vector<double>& grid) {
             return w.partition_deviation(grid);
           },
           py::arg("u_grid"))
      .def("derivative_bound_estimate", &WindowFamily::derivative_bound_estimate,
           py::arg("j"), py::arg("order"), py::arg("probe_count"));

  m.def("bump", &bump, py::arg("t"));
  m.def("bump_primitive", &bump_primitive, py::arg("u"));
  m.def("bump_normalization", &bump_normalization);

  py::class_<SphereDim>(m, "SphereDim")
      .def(py::init<int>(), py::arg("dimension"))
      .def_readonly("d", &SphereDim::d)
      .def_readonly("eta", &SphereDim::eta)
      .def_readonly("omega", &SphereDim::omega);

  m.def("gegenbauer", &gegenbauer, py::arg("ell"), py::arg("eta"), py::arg("t"));
  m.def("zonal", &zonal, py::arg("ell"), py::arg("dim"), py::arg("t"));
  m.def("eigenspace_dimension", &eigenspace_dimension, py::arg("ell"),
        py::arg("dim"));
  m.def("spherical_harmonic", &spherical_harmonic, py::arg("ell"), py::arg("m"),
        py::arg("colatitude"), py::arg("longitude"));
  m.def("packed_size", &HarmonicCoefficients::packed_size, py::arg("l_max"));
  m.def("packed_offset", &HarmonicCoefficients::offset, py::arg("ell"));
  m.def("real_harmonic_basis",
        [](int l_max, double colatitude, double longitude) {
          std::vector<double> out(HarmonicCoefficients::packed_size(l_max));
          real_harmonic_basis(l_max, colatitude, longitude, out);
          return to_array(out);
        },
        py::arg("l_max"), py::arg("colatitude"), py::arg("longitude"));

  py::class_<PowerSpectrum>(m, "PowerSpectrum")
      .def_static("power_law", &PowerSpectrum::power_law, py::arg("alpha"),
                  py::arg("amplitude") = 1.0)
      .def_static("oscillatory", &make_oscillatory, py::arg("alpha"),
                  py::arg("terms"))
      .def("__call__", &PowerSpectrum::operator(), py::arg("ell"))
      .def_property_readonly("alpha", &PowerSpectrum::alpha)
      .def_property_readonly("beta_effective", &PowerSpectrum::beta_effective);

  m.def("needlet_kernel", &needlet_kernel, py::arg("windows"), py::arg("dim"),
        py::arg("j"), py::arg("t"));
  m.def("covariance_kernel", &covariance_kernel, py::arg("windows"),
        py::arg("dim"), py::arg("spectrum"), py::arg("j"), py::arg("t"));
  m.def("needlet_correlation", &needlet_correlation, py::arg("windows"),
        py::arg("dim"), py::arg("spectrum"), py::arg("j"), py::arg("theta"));
  m.def("localization_envelope", &localization_envelope, py::arg("scales"),
        py::arg("dim"), py::arg("j"), py::arg("m_order"), py::arg("theta"));
  m.def("correlation_envelope", &correlation_envelope, py::arg("scales"),
        py::arg("j"), py::arg("n_order"), py::arg("beta"), py::arg("theta"));
  m.def("default_theta_grid", &default_theta_grid);
  m.def("localization_report",
        [](const WindowFamily& w, const SphereDim& dim, int j, int m_order,
           const std::vector<double>& grid) {
          auto rows = localization_report(w, dim, j, m_order, grid);
          std::vector<double> theta, value, envelope, ratio;
          for (const auto& r : rows) {
            theta.push_back(r.theta);
            value.push_back(r.kernel_abs);
            envelope.push_back(r.envelope);
            ratio.push_back(r.ratio);
          }
          py::dict out;
          out["theta"] = to_array(theta);
          out["value"] = to_array(value);
          out["envelope"] = to_array(envelope);
          out["ratio"] = to_array(ratio);
          return out;
        },
        py::arg("windows"), py::arg("dim"), py::arg("j"), py::arg("m_order"),
        py::arg("theta_grid"));

  py::class_<CubatureGrid>(m, "CubatureGrid")
      .def_static("build", &CubatureGrid::build, py::arg("l_exact"))
      .def_property_readonly("exactness", &CubatureGrid::exactness)
      .def("__len__", &CubatureGrid::size)
      .def("points",
           [](const CubatureGrid& g) {
             DoubleArray out({static_cast<py::ssize_t>(g.size()),
                              static_cast<py::ssize_t>(3)});
             auto* p = out.mutable_data();
             for (const auto& v : g.points()) {
               *p++ = v.x;
               *p++ = v.y;
               *p++ = v.z;
             }
             return out;
           })
      .def("weights", [](const CubatureGrid& g) { return to_array(g.weights()); })
      .def("min_spacing", &CubatureGrid::min_spacing);

  m.def("geodesic_distance",
        [](const DoubleArray& a, const DoubleArray& b) {
          return geodesic_distance(to_vec3(a), to_vec3(b));
        },
        py::arg("x"), py::arg("y"));

  py::class_<NeedletTransform>(m, "NeedletTransform")
      .def(py::init<WindowFamily>(), py::arg("windows"))
      .def_property_readonly("band_count", &NeedletTransform::band_count)
      .def_property_readonly("coverage_l_max", &NeedletTransform::coverage_l_max)
      .def("analyze",
           [](const NeedletTransform& t, int l_max, const DoubleArray& alm,
              int j) { return to_array(t.analyze(to_alm(l_max, alm), j)); },
           py::arg("l_max"), py::arg("alm"), py::arg("j"))
      .def("analyze_all",
           [](const NeedletTransform& t, int l_max, const DoubleArray& alm) {
             auto coeffs = t.analyze_all(to_alm(l_max, alm));
             std::vector<DoubleArray> out;
             out.reserve(coeffs.per_band.size());
             for (const auto& band : coeffs.per_band) out.push_back(to_array(band));
             return out;
           },
           py::arg("l_max"), py::arg("alm"))
      .def("synthesize",
           [](const NeedletTransform& t, const std::vector<DoubleArray>& bands,
              int l_max) {
             NeedletCoefficients coeffs;
             for (const auto& b : bands) coeffs.per_band.push_back(to_vector(b));
             return to_array(t.synthesize(coeffs, l_max).values);
           },
           py::arg("bands"), py::arg("l_max"))
      .def("parseval_ratio",
           [](const NeedletTransform& t, int l_max, const DoubleArray& alm) {
             return t.parseval_ratio(to_alm(l_max, alm));
           },
           py::arg("l_max"), py::arg("alm"));

  m.def("sample_harmonics",
        [](const PowerSpectrum& spec, int l_max, std::uint64_t seed,
           std::uint64_t replication) {
          return to_array(
              sample_harmonics(spec, l_max, seed, replication).coefficients.values);
        },
        py::arg("spectrum"), py::arg("l_max"), py::arg("seed"),
        py::arg("replication") = 0);
  m.def("synthesize_field",
        [](int l_max, const DoubleArray& alm, const DoubleArray& points) {
          if (points.ndim() != 2 || points.shape(1) != 3) {
            throw std::invalid_argument("points must have shape (n, 3)");
          }
          std::vector<Vec3> pts(static_cast<std::size_t>(points.shape(0)));
          for (py::ssize_t i = 0; i < points.shape(0); ++i) {
            pts[static_cast<std::size_t>(i)] = {points.at(i, 0), points.at(i, 1),
                                                points.at(i, 2)};
          }
          return to_array(synthesize_field(to_alm(l_max, alm), pts));
        },
        py::arg("l_max"), py::arg("alm"), py::arg("points"));
  m.def("empirical_needlet_correlation",
        [](const PowerSpectrum& spec, const WindowFamily& w, int j,
           const DoubleArray& x, const DoubleArray& y, int n_reps,
           std::uint64_t seed) {
          auto est = empirical_needlet_correlation(spec, w, j, to_vec3(x),
                                                   to_vec3(y), n_reps, seed);
          return py::make_tuple(est.estimate, est.standard_error);
        },
        py::arg("spectrum"), py::arg("windows"), py::arg("j"), py::arg("x"),
        py::arg("y"), py::arg("n_reps"), py::arg("seed"));

  m.def("select_subsample",
        [](const CubatureGrid& grid, const ScaleSequence& scales, int j,
           double delta, double epsilon, double beta) {
          auto idx = select_subsample(grid, scales, j,
                                      {delta, epsilon, beta, std::nullopt});
          py::array_t<std::size_t> out({static_cast<py::ssize_t>(idx.size())});
          std::copy(idx.begin(), idx.end(), out.mutable_data());
          return out;
        },
        py::arg("grid"), py::arg("scales"), py::arg("j"), py::arg("delta"),
        py::arg("epsilon"), py::arg("beta") = 0.0);
  m.def("expected_coeff_variance", &expected_coeff_variance, py::arg("windows"),
        py::arg("j"), py::arg("weight"), py::arg("spectrum"));
  m.def("gof_statistic",
        [](const DoubleArray& beta, const DoubleArray& expected) {
          return gof_statistic(to_vector(beta), to_vector(expected));
        },
        py::arg("beta"), py::arg("expected_variance"));
  m.def("moment_diagnostics",
        [](const DoubleArray& samples) {
          auto mom = moment_diagnostics(to_vector(samples));
          py::dict out;
          out["mean"] = mom.mean;
          out["variance"] = mom.variance;
          out["skewness"] = mom.skewness;
          out["excess_kurtosis"] = mom.excess_kurtosis;
          out["mean_se"] = mom.mean_se;
          out["variance_se"] = mom.variance_se;
          out["skewness_se"] = mom.skewness_se;
          out["kurtosis_se"] = mom.kurtosis_se;
          return out;
        },
        py::arg("samples"));
  m.def("run_gof",
        [](const WindowFamily& w, const PowerSpectrum& truth,
           const PowerSpectrum& hypothesized, int j, int n_reps,
           std::uint64_t seed, int threads, double delta, double epsilon,
           double beta) {
          GofRunConfig cfg;
          cfg.j = j;
          cfg.n_reps = n_reps;
          cfg.seed = seed;
          cfg.threads = threads;
          cfg.subsample = {delta, epsilon, beta, std::nullopt};
          auto result = run_gof(w, truth, hypothesized, cfg);
          py::dict out;
          out["j"] = result.j;
          out["card"] = result.card;
          out["statistics"] = to_array(result.statistics);
          out["mean"] = result.moments.mean;
          out["variance"] = result.moments.variance;
          out["skewness"] = result.moments.skewness;
          out["excess_kurtosis"] = result.moments.excess_kurtosis;
          return out;
        },
        py::arg("windows"), py::arg("true_spectrum"), py::arg("hypothesized"),
        py::arg("j"), py::arg("n_reps"), py::arg("seed"), py::arg("threads") = 1,
        py::arg("delta") = 2.0, py::arg("epsilon") = 0.1, py::arg("beta") = 0.0);
}
