#pragma once

#include "nxfem/assembly.hpp"
#include "nxfem/cut.hpp"
#include "nxfem/dofmap.hpp"
#include "nxfem/levelset.hpp"
#include "nxfem/mesh.hpp"
#include "nxfem/preconditioner.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nxfem {

/// Benchmark configuration. Defaults reproduce the two-dimensional test case:
/// rounded box of half-side 0.2 and corner radius 0.05 centred at
/// (0.5,...) + 2^-20 * (1,...), diffusivities (1.5, 2), penalty 4 times the
/// mean diffusivity, source 1 inside the box and 0 outside.
struct ExperimentConfig {
    int dim = 2;
    std::vector<int> levels = {1, 2, 3, 4};
    double alpha1 = 1.5, alpha2 = 2.0;
    double beta1 = 1.0, beta2 = 1.0;
    double lambda_mult = 4.0;   // penalty = lambda_mult * (alpha1+alpha2)/2
    double eps_exponent = 20.0; // interface shift = 2^-eps_exponent
    double geom_l = 0.2, geom_r = 0.05;
    double center = 0.5; // per-axis base of the box centre
    std::vector<std::string> preconditioners = {"BA", "BD", "DA"};
    double rel_tol = 1e-6;
    int max_iter = 1000;
    int baseline_cap = 3000; // iteration cap for the unpreconditioned runs
    int lanczos_max_iter = 500;
    std::string smoother = "jacobi";     // jacobi | sgs (enrichment block of BC)
    std::string kappa_method = "auto";   // dense | lanczos | auto
    // CG stopping monitor. The preconditioned residual sqrt(r'z) reproduces
    // the reference iteration counts; euclidean is the plain |r|.
    std::string residual_norm = "preconditioned"; // preconditioned | euclidean
    std::string out;                     // CSV path, empty = stdout
    bool baseline = false;               // add unpreconditioned rows to table1
    bool timing = false;                 // fill wall_ms (breaks byte-identical reruns)
    int max_level_3d = 4;                // memory guard for the 3D experiment

    double shift() const { return std::exp2(-eps_exponent); }
    double lambda() const { return lambda_mult * 0.5 * (alpha1 + alpha2); }
    /// Mesh resolution of a refinement level.
    int subdivisions(int level) const;

    bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config(std::istream& is);
ExperimentConfig parse_config_file(const std::string& path);
std::string serialize_config(const ExperimentConfig& cfg);

/// One assembled interface problem.
struct Experiment {
    SimplicialMesh mesh;
    CutData cut;
    DofMap dofmap;
    SparseSymMatrix A;
    Eigen::VectorXd b;
    SystemBlocks blocks;
};

Experiment build_experiment(const ExperimentConfig& cfg, int level);

struct CsvRow {
    std::string experiment;
    int level = 0;
    std::string preconditioner;
    double lambda_over_abar = 0.0;
    double alpha_ratio = 0.0;
    double kappa = 0.0;
    std::string kappa_method;
    int iterations = 0;
    bool hit_cap = false; // reported as ">cap"
    int dofs = 0;
    double wall_ms = 0.0;
};

std::vector<CsvRow> run_table1(const ExperimentConfig& cfg);
std::vector<CsvRow> run_table2_lambda_sweep(const ExperimentConfig& cfg);
std::vector<CsvRow> run_table3_alpha_sweep(const ExperimentConfig& cfg);
std::vector<CsvRow> run_table4_3d(const ExperimentConfig& cfg);

std::string csv_header();
std::string to_csv(const std::vector<CsvRow>& rows);
void print_summary(std::ostream& os, const std::vector<CsvRow>& rows);

} // namespace nxfem
