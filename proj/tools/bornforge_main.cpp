#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "bornforge/baselines.hpp"
#include "bornforge/bounds.hpp"
#include "bornforge/data.hpp"
#include "bornforge/entanglement.hpp"
#include "bornforge/serialize.hpp"
#include "bornforge/threads.hpp"
#include "bornforge/trainer.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bornforge;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitBadConfig = 2;

struct Dataset {
    TargetDistribution target;          // distribution the model trains on
    std::optional<Remap> remap;         // set when the sorted frame is trained
    std::optional<std::pair<int, int>> image_shape;
};

std::vector<double> read_sample_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open samples file " + path.string());
    std::vector<double> samples;
    double value;
    while (in >> value) samples.push_back(value);
    return samples;
}

PdfSpec pdf_spec_from_json(const json& j) {
    PdfSpec spec;
    const std::string family = j.at("family").get<std::string>();
    if (family == "log_normal") {
        spec.family = LogNormalPdf{j.at("mu").get<double>(), j.at("sigma").get<double>()};
    } else if (family == "bimodal") {
        spec.family = BimodalPdf{j.at("mu1").get<double>(), j.at("sigma1").get<double>(),
                                 j.at("mu2").get<double>(), j.at("sigma2").get<double>()};
    } else if (family == "triangular") {
        spec.family = TriangularPdf{j.at("lo").get<double>(), j.at("mode").get<double>(),
                                    j.at("hi").get<double>()};
    } else {
        throw std::runtime_error("unknown pdf family: " + family);
    }
    spec.a = j.at("a").get<double>();
    spec.b = j.at("b").get<double>();
    spec.aux_bits = j.value("aux_bits", 0);
    return spec;
}

Dataset dataset_from_json(const json& j, const fs::path& base_dir) {
    Dataset ds;
    const std::string type = j.at("type").get<std::string>();
    if (type == "pdf") {
        ds.target = discretize_pdf(pdf_spec_from_json(j), j.at("n").get<int>());
    } else if (type == "samples") {
        const fs::path path = base_dir / j.at("path").get<std::string>();
        ds.target = empirical_distribution(read_sample_file(path), j.at("n").get<int>(),
                                           j.value("aux_bits", 0), j.at("a").get<double>(),
                                           j.at("b").get<double>());
    } else if (type == "bas") {
        ds.target = bas_distribution(j.at("rows").get<int>(), j.at("cols").get<int>());
    } else if (type == "image") {
        const ImageGray img = load_pgm(base_dir / j.at("path").get<std::string>());
        ds.target = image_to_distribution(img);
        ds.image_shape = {img.rows, img.cols};
    } else {
        throw std::runtime_error("unknown dataset type: " + type);
    }
    if (j.value("remap", false)) {
        Remap rm = remap_sorted(ds.target.p);
        ds.remap = rm;
        ds.target.p = rm.sorted;
    }
    return ds;
}

LossKind loss_from_json(const json& j, int n_qubits) {
    const std::string type = j.at("type").get<std::string>();
    LossKind kind;
    if (type == "kl") {
        kind = LossKind::kl();
    } else if (type == "fisher_rao") {
        kind = LossKind::fisher_rao();
    } else if (type == "mmd") {
        kind = LossKind::mmd(n_qubits);
    } else if (type == "log_mmd") {
        kind = LossKind::log_mmd(n_qubits);
    } else {
        throw std::runtime_error("unknown loss: " + type);
    }
    if (j.contains("sigmas")) kind.sigmas = j.at("sigmas").get<std::vector<double>>();
    kind.validate();
    return kind;
}

TrainResult run_model(const json& model, const json& loss_json, std::uint64_t seed,
                      const TargetDistribution& target) {
    const std::string type = model.at("type").get<std::string>();
    const LossKind loss = loss_from_json(loss_json, target.n_qubits);
    if (type == "aclbm") {
        TrainConfig config;
        config.loss = loss;
        config.seed = seed;
        config.n_ops = model.value("n_ops", 3);
        config.eps1 = model.value("eps1", 1e-3);
        config.eps2 = model.value("eps2", 5e-3);
        config.alpha = model.value("alpha", 0.1);
        config.max_iterations = model.value("max_iterations", 100);
        config.max_epochs = model.value("max_epochs", 500);
        const std::string order = model.value("append_order", std::string("descending"));
        if (order == "randomized")
            config.append_order = AppendOrder::Randomized;
        else if (order != "descending")
            throw std::runtime_error("unknown append_order: " + order);
        OperatorPool pool = build_full_pool(target.n_qubits);
        const double reduction = model.value("pool_reduction", 0.0);
        if (reduction > 0.0) {
            const CorrelationMatrix mi =
                mutual_information_matrix(amplitude_state(target.p));
            Eigen::MatrixXd matrix(target.n_qubits, target.n_qubits);
            for (int i = 0; i < target.n_qubits; ++i)
                for (int j = 0; j < target.n_qubits; ++j) matrix(i, j) = mi.at(i, j);
            pool = build_reduced_pool(pool, matrix, reduction);
        }
        return train_aclbm(target, pool, config);
    }

    FixedAnsatzSpec spec;
    if (type == "structure1")
        spec.family = AnsatzFamily::Structure1;
    else if (type == "structure2")
        spec.family = AnsatzFamily::Structure2;
    else if (type == "mps")
        spec.family = AnsatzFamily::MPS;
    else
        throw std::runtime_error("unknown model type: " + type);
    spec.n_qubits = target.n_qubits;
    spec.depth = model.at("depth").get<int>();
    spec.seed = seed;

    FixedTrainConfig config;
    config.loss = loss;
    config.adaptive_lr = model.value("adaptive_lr", false);
    config.lr = model.value("lr", 0.05);
    config.alpha = model.value("alpha", 0.1);
    config.eps2 = model.value("eps2", 1e-4);
    config.max_epochs = model.value("max_epochs", 2000);
    return train_fixed(build_fixed_ansatz(spec), target, config);
}

void write_manifest(const fs::path& out_dir, std::uint64_t seed,
                    const std::vector<std::string>& files) {
    json manifest;
    manifest["seed"] = seed;
    json hashes;
    for (const std::string& name : files) hashes[name] = file_digest(out_dir / name);
    manifest["artifacts"] = std::move(hashes);
    write_text_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
}

int cmd_train(const fs::path& config_path, const fs::path& out_dir) {
    std::string config_text;
    try {
        config_text = read_text_file(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    json config;
    try {
        config = json::parse(config_text);
    } catch (const std::exception& e) {
        std::cerr << "error: invalid JSON config: " << e.what() << "\n";
        return kExitBadConfig;
    }
    try {
        const std::uint64_t seed = config.value("seed", 0ull);
        const Dataset ds = dataset_from_json(config.at("dataset"), config_path.parent_path());
        const TrainResult result =
            run_model(config.at("model"), config.at("loss"), seed, ds.target);

        fs::create_directories(out_dir);
        write_text_file(out_dir / "config.json", config_text);
        write_text_file(out_dir / "circuit.json",
                        circuit_to_json(result.circuit).dump(2) + "\n");
        {
            std::ofstream hist(out_dir / "history.csv", std::ios::binary);
            write_history_csv(hist, result.report);
        }
        {
            std::ofstream target_csv(out_dir / "target.csv", std::ios::binary);
            write_distribution_csv(target_csv, ds.target.p);
        }
        const std::vector<double> model_q =
            born_probabilities(run_circuit(result.circuit));
        {
            std::ofstream model_csv(out_dir / "model.csv", std::ios::binary);
            write_distribution_csv(model_csv, model_q);
        }

        json metrics = metrics_to_json(result.report);
        metrics["remap"] = ds.remap.has_value();
        std::vector<std::string> files = {"config.json", "circuit.json", "history.csv",
                                          "target.csv", "model.csv"};
        if (ds.remap) {
            const std::vector<double> restored = unremap(model_q, ds.remap->perm);
            std::ofstream un(out_dir / "model_unremapped.csv", std::ios::binary);
            write_distribution_csv(un, restored);
            files.push_back("model_unremapped.csv");
            if (ds.image_shape) {
                save_pgm(distribution_to_image(restored, ds.image_shape->first,
                                               ds.image_shape->second),
                         out_dir / "reconstruction.pgm");
                files.push_back("reconstruction.pgm");
            }
        } else if (ds.image_shape) {
            save_pgm(distribution_to_image(model_q, ds.image_shape->first,
                                           ds.image_shape->second),
                     out_dir / "reconstruction.pgm");
            files.push_back("reconstruction.pgm");
        }
        write_text_file(out_dir / "metrics.json", metrics.dump(2) + "\n");
        files.push_back("metrics.json");
        write_manifest(out_dir, seed, files);

        std::cout << "final loss " << format_double(result.report.final_loss) << ", KL "
                  << format_double(result.report.final_kl) << ", "
                  << result.report.resources.parameters << " parameters, "
                  << result.report.total_measurements << " measurements\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

int cmd_entanglement(const fs::path& target_path, const fs::path& out_dir) {
    json config;
    try {
        config = json::parse(read_text_file(target_path));
    } catch (const json::exception& e) {
        std::cerr << "error: invalid JSON target spec: " << e.what() << "\n";
        return kExitBadConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    try {
        const Dataset ds = dataset_from_json(config, target_path.parent_path());
        const StateVector state = amplitude_state(ds.target.p);
        fs::create_directories(out_dir);
        {
            std::ofstream out(out_dir / "qmi.csv", std::ios::binary);
            write_matrix_csv(out, mutual_information_matrix(state));
        }
        {
            std::ofstream out(out_dir / "eof.csv", std::ios::binary);
            write_matrix_csv(out, eof_matrix(state));
        }
        std::cout << "wrote qmi.csv and eof.csv for " << ds.target.n_qubits << " qubits\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

int cmd_bound(double kl, double alpha, double time, std::optional<double> epsilon) {
    try {
        json out;
        out["kl"] = kl;
        out["alpha"] = alpha;
        out["time"] = time;
        out["time_evolution_bound"] = ham_sim_error_bound(kl, alpha, time);
        out["vacuous"] = std::sqrt(2.0 * kl) >= 2.0;
        if (epsilon) out["required_kl"] = required_kl(*epsilon, alpha, time);
        std::cout << out.dump(2) << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_limit_from_env();

    CLI::App app{"adaptive Born-machine state preparation"};
    app.require_subcommand(1);

    std::string config_file;
    std::string out_dir = "run";
    CLI::App* train = app.add_subcommand("train", "train a model against a dataset");
    train->add_option("--config", config_file, "JSON run configuration")->required();
    train->add_option("--out", out_dir, "output directory");

    std::string target_file;
    std::string ent_out = "entanglement";
    CLI::App* ent = app.add_subcommand("entanglement", "pairwise QMI/EOF of a target state");
    ent->add_option("--target", target_file, "JSON dataset spec")->required();
    ent->add_option("--out", ent_out, "output directory");

    double kl = 0.0;
    double alpha = 1.0;
    double time = 1.0;
    double epsilon = -1.0;
    CLI::App* bound = app.add_subcommand("bound", "time-evolution error bound from KL error");
    bound->add_option("--kl", kl, "KL divergence of the coefficient loader")->required();
    bound->add_option("--alpha", alpha, "LCU coefficient 1-norm")->required();
    bound->add_option("--time", time, "evolution time")->required();
    bound->add_option("--epsilon", epsilon, "also report the KL needed for this error");

    CLI11_PARSE(app, argc, argv);

    if (train->parsed()) return cmd_train(config_file, out_dir);
    if (ent->parsed()) return cmd_entanglement(target_file, ent_out);
    return cmd_bound(kl, alpha, time,
                     epsilon >= 0.0 ? std::optional<double>(epsilon) : std::nullopt);
}
