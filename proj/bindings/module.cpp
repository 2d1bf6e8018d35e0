// Python bindings for the core operations: measures and transforms,
// subordination, domain classification, matrix sampling, outlier
// experiments and Weingarten tables.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "freering/config.hpp"
#include "freering/emit.hpp"
#include "freering/outliers.hpp"
#include "freering/rmt.hpp"
#include "freering/subordination.hpp"
#include "freering/weingarten.hpp"

namespace py = pybind11;
using namespace freering;

PYBIND11_MODULE(_freering, m) {
    m.doc() = "Free-probability predictions and Monte-Carlo checks for the deformed single ring model";

    py::register_exception<NonConvergenceError>(m, "NonConvergenceError", PyExc_RuntimeError);
    py::register_exception<NoGapError>(m, "NoGapError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<DiscreteMeasure>(m, "DiscreteMeasure")
        .def_static("from_atoms", &DiscreteMeasure::from_atoms, py::arg("locations"),
                    py::arg("weights"))
        .def_static("dirac", &DiscreteMeasure::dirac, py::arg("location"))
        .def_property_readonly("locations", &DiscreteMeasure::locations)
        .def_property_readonly("weights", &DiscreteMeasure::weights)
        .def_property_readonly("symmetric", &DiscreteMeasure::is_symmetric)
        .def("symmetrized", &DiscreteMeasure::symmetrized)
        .def("dilated", &DiscreteMeasure::dilated, py::arg("c"))
        .def("moment", &DiscreteMeasure::moment, py::arg("p"))
        .def("cauchy", &DiscreteMeasure::cauchy, py::arg("z"))
        .def("cauchy_derivative", &DiscreteMeasure::cauchy_derivative, py::arg("z"))
        .def("f_transform", &DiscreteMeasure::f_transform, py::arg("z"))
        .def("r_transform", &DiscreteMeasure::r_transform, py::arg("w"))
        .def("to_json", &DiscreteMeasure::to_json_string)
        .def_static("from_json", &DiscreteMeasure::from_json_string, py::arg("text"))
        .def("__repr__", [](const DiscreteMeasure& mu) {
            return "DiscreteMeasure(" + std::to_string(mu.atom_count()) + " atoms)";
        });

    py::class_<FiniteMeasure>(m, "FiniteMeasure")
        .def(py::init<>())
        .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("locations"),
             py::arg("weights"))
        .def_property_readonly("total_mass", &FiniteMeasure::total_mass);

    m.def("symmetrized_singular_law", &symmetrized_singular_law, py::arg("matrix"),
          py::arg("shift"));

    py::class_<TransformDiagnostics>(m, "TransformDiagnostics")
        .def_readonly("eta_grid", &TransformDiagnostics::eta_grid)
        .def_readonly("bound", &TransformDiagnostics::bound)
        .def_readonly("passed", &TransformDiagnostics::passed);
    m.def("cauchy_bound_diag", &cauchy_bound_diag, py::arg("mu"), py::arg("kappa1"),
          py::arg("kappa2"), py::arg("n"));

    py::class_<SubordinationSolution>(m, "SubordinationSolution")
        .def_readonly("z", &SubordinationSolution::z)
        .def_readonly("omega1", &SubordinationSolution::omega1)
        .def_readonly("omega2", &SubordinationSolution::omega2)
        .def_readonly("g_value", &SubordinationSolution::g_value)
        .def_readonly("iterations", &SubordinationSolution::iterations)
        .def_readonly("residual", &SubordinationSolution::residual);
    m.def("subordination_solve", &subordination_solve, py::arg("mu1"), py::arg("mu2"),
          py::arg("z"));

    py::enum_<HSide>(m, "HSide").value("H1", HSide::H1).value("H2", HSide::H2);
    m.def("h_map", &h_map, py::arg("side"), py::arg("mu1"), py::arg("mu2"), py::arg("z"));

    py::class_<SupportGapCertificate>(m, "SupportGapCertificate")
        .def_readonly("gamma", &SupportGapCertificate::gamma)
        .def_readonly("k_const", &SupportGapCertificate::k_const)
        .def_readonly("epsilon", &SupportGapCertificate::epsilon)
        .def_readonly("side", &SupportGapCertificate::side);
    m.def("support_gap", &support_gap, py::arg("mu1"), py::arg("mu2"), py::arg("side"));

    m.def("density_on_grid", &density_on_grid, py::arg("mu1"), py::arg("mu2"),
          py::arg("interval"), py::arg("points"), py::arg("eta"));
    m.def("density_on_grid_refined", &density_on_grid_refined, py::arg("mu1"), py::arg("mu2"),
          py::arg("interval"), py::arg("points"), py::arg("eta_start"));
    m.def("infdiv_phi", &infdiv_phi, py::arg("mu1"), py::arg("sigma"), py::arg("x"));
    m.def("infdiv_boundary_nu", &infdiv_boundary_nu, py::arg("mu1"), py::arg("sigma"),
          py::arg("x"));

    py::class_<ModelSpec>(m, "ModelSpec")
        .def(py::init<DiscreteMeasure, std::vector<Complex>, std::vector<double>,
                      std::vector<Complex>>(),
             py::arg("sigma_law"), py::arg("aprime_locations"), py::arg("aprime_weights"),
             py::arg("spikes"))
        .def_readonly("sigma_law", &ModelSpec::sigma_law)
        .def_readonly("aprime_locations", &ModelSpec::aprime_locations)
        .def_readonly("aprime_weights", &ModelSpec::aprime_weights)
        .def_readonly("spikes", &ModelSpec::spikes);

    py::enum_<DomainClass>(m, "DomainClass")
        .value("ThetaOut", DomainClass::ThetaOut)
        .value("ThetaIn", DomainClass::ThetaIn)
        .value("Neither", DomainClass::Neither);
    m.def("theta_classify", &theta_classify, py::arg("model"), py::arg("z"));

    py::class_<BBox>(m, "BBox")
        .def(py::init<double, double, double, double>(), py::arg("xmin"), py::arg("xmax"),
             py::arg("ymin"), py::arg("ymax"));
    py::class_<DomainGrid>(m, "DomainGrid")
        .def_readonly("resolution", &DomainGrid::resolution)
        .def_readonly("classes", &DomainGrid::classes)
        .def("at", &DomainGrid::at, py::arg("row"), py::arg("col"));
    m.def("grid_map", &grid_map, py::arg("model"), py::arg("bbox"), py::arg("resolution"));

    py::class_<Disk>(m, "Disk")
        .def_readonly("center", &Disk::center)
        .def_readonly("radius", &Disk::radius)
        .def("contains", &Disk::contains, py::arg("z"));
    m.def("f2_disk", &f2_disk, py::arg("model"));
    m.def("ring_radii", &ring_radii, py::arg("model"));

    m.def("model_mu1", &model_mu1, py::arg("model"), py::arg("z"));
    m.def("model_mu2", &model_mu2, py::arg("model"));

    py::class_<ModelSample>(m, "ModelSample")
        .def_readonly("n", &ModelSample::n)
        .def_readonly("rank", &ModelSample::rank)
        .def_readonly("m", &ModelSample::m)
        .def_readonly("sigma_diag", &ModelSample::sigma_diag)
        .def_readonly("seed", &ModelSample::seed);
    m.def("sample_model", &sample_model, py::arg("spec"), py::arg("n"), py::arg("seed"));
    m.def(
        "haar_unitary",
        [](int n, std::uint64_t seed) {
            Rng rng(seed);
            return haar_unitary(n, rng);
        },
        py::arg("n"), py::arg("seed"));
    m.def("eigenvalues", &eigenvalues, py::arg("matrix"));
    m.def("smallest_sv", &smallest_sv, py::arg("matrix"), py::arg("z"));
    m.def("det_functions", &det_functions, py::arg("sample"), py::arg("z"));
    m.def("series_term", &series_term, py::arg("sample"), py::arg("z"), py::arg("k"),
          py::arg("v"), py::arg("u"));
    m.def("spectral_radius_outer", &spectral_radius_outer, py::arg("sample"), py::arg("z"));
    m.def("spectral_radius_inner", &spectral_radius_inner, py::arg("sample"), py::arg("z"));

    py::class_<SpikeMatch>(m, "SpikeMatch")
        .def_readonly("spike", &SpikeMatch::spike)
        .def_readonly("eigenvalues_in_disk", &SpikeMatch::eigenvalues_in_disk)
        .def_readonly("distance", &SpikeMatch::distance)
        .def_readonly("matched", &SpikeMatch::matched);
    m.def("match_spikes", &match_spikes, py::arg("eigenvalues"), py::arg("spikes_out"),
          py::arg("tol"));
    m.def("stability_margin", &stability_margin, py::arg("spec"), py::arg("n"),
          py::arg("boundary"));
    m.def("inner_empty_check", &inner_empty_check, py::arg("eigenvalues"), py::arg("center"),
          py::arg("radius"));

    py::class_<SpikeTrialStats>(m, "SpikeTrialStats")
        .def_readonly("spike", &SpikeTrialStats::spike)
        .def_readonly("match_count", &SpikeTrialStats::match_count)
        .def_readonly("mean_distance", &SpikeTrialStats::mean_distance)
        .def_readonly("max_distance", &SpikeTrialStats::max_distance);
    py::class_<OutlierReport>(m, "OutlierReport")
        .def_readonly("n", &OutlierReport::n)
        .def_readonly("trials", &OutlierReport::trials)
        .def_readonly("tol", &OutlierReport::tol)
        .def_readonly("per_spike", &OutlierReport::per_spike)
        .def_readonly("inner_violations", &OutlierReport::inner_violations)
        .def_readonly("stability_margin", &OutlierReport::stability_margin)
        .def_readonly("seeds", &OutlierReport::seeds)
        .def("to_json", [](const OutlierReport& r) { return report_json(r); });
    m.def("run_experiment", &run_experiment, py::arg("spec"), py::arg("n"), py::arg("trials"),
          py::arg("tol"), py::arg("base_seed"));

    py::class_<WeingartenTable>(m, "WeingartenTable")
        .def_readonly("p", &WeingartenTable::p)
        .def_readonly("n", &WeingartenTable::n)
        .def_readonly("values", &WeingartenTable::values)
        .def_readonly("gram_residual", &WeingartenTable::gram_residual)
        .def_readonly("class_spread", &WeingartenTable::class_spread)
        .def("at", &WeingartenTable::at, py::arg("cycle_type"));
    m.def("wg_exact", &wg_exact, py::arg("p"), py::arg("n"));
    m.def("wg_asymptotic_check", &wg_asymptotic_check, py::arg("p"), py::arg("sigma_type"),
          py::arg("ns"));
    m.def("moebius_factor", &moebius_factor, py::arg("cycle_type"));
    m.def("mixed_moment_exact", &mixed_moment_exact, py::arg("i"), py::arg("i_prime"),
          py::arg("j"), py::arg("j_prime"), py::arg("n"));
    py::class_<McMoment>(m, "McMoment")
        .def_readonly("mean", &McMoment::mean)
        .def_property_readonly("stderr", [](const McMoment& mc) { return mc.stderr_; });
    m.def("mc_moment", &mc_moment, py::arg("i"), py::arg("i_prime"), py::arg("j"),
          py::arg("j_prime"), py::arg("n"), py::arg("trials"), py::arg("seed"));

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def_readonly("model", &ExperimentConfig::model)
        .def_readonly("n", &ExperimentConfig::n)
        .def_readonly("trials", &ExperimentConfig::trials)
        .def_readonly("tol", &ExperimentConfig::tol)
        .def("to_json", &ExperimentConfig::to_json_string);
    m.def("parse_config", &parse_config, py::arg("path"));
    m.def("parse_config_text", &parse_config_text, py::arg("text"));
    m.def("model_hash", &model_hash, py::arg("model"));
}
