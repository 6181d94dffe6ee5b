#include "nxfem/bench.hpp"

#include "nxfem/krylov.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nxfem {

int ExperimentConfig::subdivisions(int level) const {
    // 2D: L1..L4 = 8,16,32,64; 3D: L0..L6 = 2,...,128
    return dim == 2 ? (1 << (level + 2)) : (1 << (level + 1));
}

namespace {

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto a = item.find_first_not_of(" \t");
        const auto b = item.find_last_not_of(" \t");
        if (a != std::string::npos) out.push_back(item.substr(a, b - a + 1));
    }
    return out;
}

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
    return out;
}

std::string join(const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out;
}

} // namespace

ExperimentConfig parse_config(std::istream& is) {
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key=value");
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));

        if (key == "dim") cfg.dim = std::stoi(val);
        else if (key == "levels") {
            cfg.levels.clear();
            for (const auto& t : split_list(val)) cfg.levels.push_back(std::stoi(t));
        } else if (key == "alpha1") cfg.alpha1 = std::stod(val);
        else if (key == "alpha2") cfg.alpha2 = std::stod(val);
        else if (key == "beta1") cfg.beta1 = std::stod(val);
        else if (key == "beta2") cfg.beta2 = std::stod(val);
        else if (key == "lambda_mult") cfg.lambda_mult = std::stod(val);
        else if (key == "eps_exponent") cfg.eps_exponent = std::stod(val);
        else if (key == "geom_l") cfg.geom_l = std::stod(val);
        else if (key == "geom_r") cfg.geom_r = std::stod(val);
        else if (key == "center") cfg.center = std::stod(val);
        else if (key == "preconditioners") cfg.preconditioners = split_list(val);
        else if (key == "rel_tol") cfg.rel_tol = std::stod(val);
        else if (key == "max_iter") cfg.max_iter = std::stoi(val);
        else if (key == "baseline_cap") cfg.baseline_cap = std::stoi(val);
        else if (key == "lanczos_max_iter") cfg.lanczos_max_iter = std::stoi(val);
        else if (key == "smoother") cfg.smoother = val;
        else if (key == "kappa_method") cfg.kappa_method = val;
        else if (key == "residual_norm") cfg.residual_norm = val;
        else if (key == "out") cfg.out = val;
        else if (key == "baseline") cfg.baseline = (val == "true" || val == "1");
        else if (key == "timing") cfg.timing = (val == "true" || val == "1");
        else if (key == "max_level_3d") cfg.max_level_3d = std::stoi(val);
        else throw std::runtime_error("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    return parse_config(in);
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    os << "dim = " << cfg.dim << "\n"
       << "levels = " << join(cfg.levels) << "\n"
       << "alpha1 = " << cfg.alpha1 << "\n"
       << "alpha2 = " << cfg.alpha2 << "\n"
       << "beta1 = " << cfg.beta1 << "\n"
       << "beta2 = " << cfg.beta2 << "\n"
       << "lambda_mult = " << cfg.lambda_mult << "\n"
       << "eps_exponent = " << cfg.eps_exponent << "\n"
       << "geom_l = " << cfg.geom_l << "\n"
       << "geom_r = " << cfg.geom_r << "\n"
       << "center = " << cfg.center << "\n"
       << "preconditioners = " << join(cfg.preconditioners) << "\n"
       << "rel_tol = " << cfg.rel_tol << "\n"
       << "max_iter = " << cfg.max_iter << "\n"
       << "baseline_cap = " << cfg.baseline_cap << "\n"
       << "lanczos_max_iter = " << cfg.lanczos_max_iter << "\n"
       << "smoother = " << cfg.smoother << "\n"
       << "kappa_method = " << cfg.kappa_method << "\n"
       << "residual_norm = " << cfg.residual_norm << "\n"
       << "out = " << cfg.out << "\n"
       << "baseline = " << (cfg.baseline ? "true" : "false") << "\n"
       << "timing = " << (cfg.timing ? "true" : "false") << "\n"
       << "max_level_3d = " << cfg.max_level_3d << "\n";
    return os.str();
}

Experiment build_experiment(const ExperimentConfig& cfg, int level) {
    Experiment ex;
    const int n = cfg.subdivisions(level);
    ex.mesh = cfg.dim == 2 ? build_uniform_square_mesh(n) : build_uniform_cube_mesh(n);

    RoundedBoxLevelSet ls;
    ls.dim = cfg.dim;
    ls.center = Point::Zero();
    for (int c = 0; c < cfg.dim; ++c) ls.center[c] = cfg.center + cfg.shift();
    ls.half_side = cfg.geom_l;
    ls.corner_radius = cfg.geom_r;

    ex.cut = compute_cut(ex.mesh, vertex_levelset(ex.mesh, ls));
    ex.dofmap = build_dofmap(ex.mesh, ex.cut);

    ProblemCoefficients coeffs;
    coeffs.alpha1 = cfg.alpha1;
    coeffs.alpha2 = cfg.alpha2;
    coeffs.beta1 = cfg.beta1;
    coeffs.beta2 = cfg.beta2;
    coeffs.lambda = cfg.lambda();
    coeffs.f1 = 1.0;
    coeffs.f2 = 0.0;

    ex.A = assemble_stiffness(ex.mesh, ex.cut, ex.dofmap, coeffs);
    ex.b = assemble_rhs(ex.mesh, ex.cut, ex.dofmap, coeffs);
    ex.blocks = extract_blocks(ex.A, ex.dofmap);
    return ex;
}

namespace {

Preconditioner make_preconditioner(const std::string& name, const Experiment& ex,
                                   const ExperimentConfig& cfg, int level) {
    using Kind = Preconditioner::Kind;
    if (name == "BA") return Preconditioner::build(Kind::ExactBlock, ex.blocks);
    if (name == "BD") return Preconditioner::build(Kind::MixedBlock, ex.blocks);
    if (name == "DA") return Preconditioner::build(Kind::JacobiFull, ex.blocks);
    if (name == "none") return Preconditioner::build(Kind::Identity, ex.blocks);
    if (name == "BC") {
        std::vector<SimplicialMesh> meshes;
        SimplicialMesh m = cfg.dim == 2 ? build_uniform_square_mesh(cfg.subdivisions(0))
                                        : build_uniform_cube_mesh(cfg.subdivisions(0));
        meshes.push_back(m);
        for (int l = 1; l <= level; ++l) meshes.push_back(refine(meshes.back()));
        auto mg = std::make_shared<MGHierarchy>(std::move(meshes), ex.blocks.A0);
        const auto smoother = cfg.smoother == "sgs"
                                  ? Preconditioner::Smoother::SymmetricGaussSeidel
                                  : Preconditioner::Smoother::Diagonal;
        return Preconditioner::build(Kind::MGBlock, ex.blocks, std::move(mg), smoother);
    }
    throw std::invalid_argument("unknown preconditioner '" + name + "'");
}

CsvRow measure_cell(const std::string& table, const Experiment& ex, const ExperimentConfig& cfg,
                    int level, const std::string& precond_name) {
    CsvRow row;
    row.experiment = table;
    row.level = level;
    row.preconditioner = precond_name == "BC" ? "BC-" + cfg.smoother : precond_name;
    row.lambda_over_abar = cfg.lambda_mult;
    row.alpha_ratio = cfg.alpha1 / cfg.alpha2;
    row.dofs = ex.dofmap.n_dofs();

    const Preconditioner P = make_preconditioner(precond_name, ex, cfg, level);
    const int cap = precond_name == "none" ? cfg.baseline_cap : cfg.max_iter;
    const auto norm_type = cfg.residual_norm == "euclidean" ? ResidualNorm::Euclidean
                                                            : ResidualNorm::Preconditioned;

    const auto t0 = std::chrono::steady_clock::now();
    const SolveReport rep = pcg(ex.A.mat, ex.b, [&P](const Eigen::VectorXd& r) { return P.apply(r); },
                                cfg.rel_tol, cap, norm_type);
    const auto t1 = std::chrono::steady_clock::now();
    if (cfg.timing) row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    row.iterations = rep.iterations;
    row.hit_cap = !rep.converged;

    bool dense = cfg.kappa_method == "dense";
    if (cfg.kappa_method == "auto") dense = row.dofs <= 1000 && P.has_explicit_matrix();
    if (dense) {
        row.kappa = exact_condition_dense(Eigen::MatrixXd(ex.A.mat), P.explicit_matrix());
        row.kappa_method = "dense";
    } else {
        // the raw operator needs a long recurrence to expose its extreme modes
        const int iters = precond_name == "none" ? std::max(cfg.lanczos_max_iter, cfg.baseline_cap)
                                                 : cfg.lanczos_max_iter;
        row.kappa = saturated_lanczos_condition(
            ex.A.mat, [&P](const Eigen::VectorXd& r) { return P.apply(r); }, iters);
        row.kappa_method = "lanczos";
    }
    return row;
}

} // namespace

std::vector<CsvRow> run_table1(const ExperimentConfig& cfg) {
    if (cfg.dim != 2) throw std::invalid_argument("table1 is a two-dimensional experiment");
    std::vector<int> levels = cfg.levels;
    std::sort(levels.begin(), levels.end());
    std::vector<std::string> preconds = cfg.preconditioners;
    if (cfg.baseline) preconds.push_back("none");

    std::vector<CsvRow> rows;
    for (int level : levels) {
        const Experiment ex = build_experiment(cfg, level);
        for (const auto& name : preconds) rows.push_back(measure_cell("table1", ex, cfg, level, name));
    }
    return rows;
}

std::vector<CsvRow> run_table2_lambda_sweep(const ExperimentConfig& cfg) {
    if (cfg.dim != 2) throw std::invalid_argument("table2 is a two-dimensional experiment");
    const int level = 2;
    std::vector<CsvRow> rows;
    for (const double mult : {4.0, 40.0, 400.0, 4000.0}) {
        ExperimentConfig c = cfg;
        c.lambda_mult = mult;
        const Experiment ex = build_experiment(c, level);
        for (const auto& name : cfg.preconditioners)
            rows.push_back(measure_cell("table2", ex, c, level, name));
    }
    return rows;
}

std::vector<CsvRow> run_table3_alpha_sweep(const ExperimentConfig& cfg) {
    if (cfg.dim != 2) throw std::invalid_argument("table3 is a two-dimensional experiment");
    const int level = 2;
    std::vector<CsvRow> rows;
    for (const double ratio : {0.75, 7.5, 75.0, 750.0}) {
        ExperimentConfig c = cfg;
        c.alpha1 = ratio * c.alpha2; // alpha2 stays fixed
        const Experiment ex = build_experiment(c, level);
        for (const auto& name : cfg.preconditioners)
            rows.push_back(measure_cell("table3", ex, c, level, name));
    }
    return rows;
}

std::vector<CsvRow> run_table4_3d(const ExperimentConfig& cfg) {
    // fields still at their 2D defaults switch to the 3D setup:
    // diffusivities (1, 3), penalty 5 * mean diffusivity, levels L2-L4
    ExperimentConfig c = cfg;
    const ExperimentConfig def;
    c.dim = 3;
    if (c.lambda_mult == def.lambda_mult) c.lambda_mult = 5.0;
    if (c.alpha1 == def.alpha1 && c.alpha2 == def.alpha2) {
        c.alpha1 = 1.0;
        c.alpha2 = 3.0;
    }
    std::vector<int> levels = c.levels == def.levels ? std::vector<int>{2, 3, 4} : c.levels;
    std::sort(levels.begin(), levels.end());

    std::vector<CsvRow> rows;
    for (int level : levels) {
        if (level > c.max_level_3d)
            throw std::runtime_error("table4: level " + std::to_string(level) +
                                     " exceeds the memory guard (max_level_3d = " +
                                     std::to_string(c.max_level_3d) + ")");
        const Experiment ex = build_experiment(c, level);
        rows.push_back(measure_cell("table4", ex, c, level, "BC"));
    }
    return rows;
}

std::string csv_header() {
    return "experiment,level,preconditioner,lambda_over_abar,alpha_ratio,kappa,kappa_method,"
           "iterations,dofs,wall_ms";
}

std::string to_csv(const std::vector<CsvRow>& rows) {
    std::ostringstream os;
    os << csv_header() << "\n";
    for (const auto& r : rows) {
        os << r.experiment << ",L" << r.level << "," << r.preconditioner << ","
           << std::setprecision(6) << r.lambda_over_abar << "," << r.alpha_ratio << ","
           << r.kappa << "," << r.kappa_method << ",";
        if (r.hit_cap) os << ">";
        os << r.iterations << "," << r.dofs << "," << std::llround(r.wall_ms) << "\n";
    }
    return os.str();
}

void print_summary(std::ostream& os, const std::vector<CsvRow>& rows) {
    os << std::left << std::setw(8) << "table" << std::setw(6) << "level" << std::setw(12)
       << "precond" << std::setw(12) << "kappa" << std::setw(8) << "method" << std::setw(8)
       << "iters" << std::setw(8) << "dofs" << "\n";
    for (const auto& r : rows) {
        os << std::left << std::setw(8) << r.experiment << std::setw(6) << ("L" + std::to_string(r.level))
           << std::setw(12) << r.preconditioner << std::setw(12) << std::setprecision(4) << r.kappa
           << std::setw(8) << r.kappa_method << std::setw(8)
           << ((r.hit_cap ? ">" : "") + std::to_string(r.iterations)) << std::setw(8) << r.dofs
           << "\n";
    }
}

} // namespace nxfem
