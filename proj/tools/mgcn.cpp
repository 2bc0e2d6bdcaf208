#include <iostream>

#include <CLI11.hpp>

#include "mgcn/beam.hpp"
#include "mgcn/error.hpp"
#include "mgcn/grad_check.hpp"
#include "mgcn/io.hpp"
#include "mgcn/metrics.hpp"
#include "mgcn/runconfig.hpp"
#include "mgcn/stats.hpp"
#include "mgcn/synth.hpp"
#include "mgcn/train.hpp"

namespace {

using namespace mgcn;

struct Flags {
    std::string config_path;
    std::string in_path;
    std::string out_path;
    std::string train_path;
    std::string valid_path;
    std::string checkpoint_path;
    std::string candidates_path;
    std::string references_path;
    std::string aggregation;
    std::string graphs;
    std::string delex;
    std::uint64_t seed = 0;
    std::size_t layers = 0, hidden = 0, beam = 0;
    bool levi = false;
};

bool flag_given(CLI::App* cmd, const std::string& name) {
    const CLI::Option* opt = cmd->get_option_no_throw(name);
    return opt && opt->count() > 0;
}

RunConfig effective_config(const Flags& f, CLI::App* cmd) {
    RunConfig rc;
    if (!f.config_path.empty())
        rc = RunConfig::from_file(f.config_path);
    if (flag_given(cmd, "--seed"))
        rc.train.seed = f.seed;
    if (flag_given(cmd, "--layers"))
        rc.train.layers = f.layers;
    if (flag_given(cmd, "--hidden"))
        rc.train.hidden = f.hidden;
    if (flag_given(cmd, "--beam"))
        rc.train.beam = f.beam;
    if (flag_given(cmd, "--aggregation"))
        rc.set("aggregation", f.aggregation, "--aggregation");
    if (flag_given(cmd, "--graphs"))
        rc.set("graphs", f.graphs, "--graphs");
    if (flag_given(cmd, "--delex"))
        rc.set("delex", f.delex, "--delex");
    if (flag_given(cmd, "--train"))
        rc.train_path = f.train_path;
    if (flag_given(cmd, "--valid"))
        rc.valid_path = f.valid_path;
    if (flag_given(cmd, "--out"))
        rc.out_path = f.out_path;
    if (flag_given(cmd, "--checkpoint"))
        rc.checkpoint_path = f.checkpoint_path;
    return rc;
}

void write_or_print(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        write_file_atomic(out_path, content);
}

int cmd_synth(std::uint64_t seed, std::size_t instances, std::size_t entities,
              std::size_t relations, std::size_t triples,
              const std::string& out) {
    std::vector<Instance> corpus =
        synth_corpus(seed, instances, entities, relations, triples);
    std::string body;
    for (const Instance& inst : corpus) {
        body += instance_to_json_line(inst);
        body += '\n';
    }
    write_or_print(out, body);
    return 0;
}

int cmd_stats(const std::string& in) {
    std::cout << dataset_stats(load_instances(in)).to_report();
    return 0;
}

int cmd_transform(const std::string& in, bool levi, const std::string& out) {
    std::vector<Instance> instances = load_instances(in);
    std::string body;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        body += "# instance " + std::to_string(i) + "\n";
        if (instances[i].triples.empty()) {
            body += "empty\n";
            continue;
        }
        body += levi ? dump_levi(to_levi(instances[i].triples))
                     : dump_multigraph(to_multigraph(instances[i].triples));
    }
    write_or_print(out, body);
    return 0;
}

int cmd_train(const RunConfig& rc) {
    if (rc.train_path.empty() || rc.valid_path.empty() || rc.out_path.empty())
        throw DataError("train needs train, valid and out paths (config keys "
                        "or flags)");
    std::vector<Instance> train_set = load_instances(rc.train_path);
    std::vector<Instance> valid_set = load_instances(rc.valid_path);
    if (rc.train.delex) {
        for (Instance& inst : train_set)
            inst = delexicalize(inst).instance;
        for (Instance& inst : valid_set)
            inst = delexicalize(inst).instance;
    }

    std::string log;
    TrainResult result =
        train(rc.train, train_set, valid_set, [&log](const EpochLog& e) {
            log += std::to_string(e.epoch) + "\t" +
                   std::to_string(e.train_perplexity) + "\t" +
                   std::to_string(e.val_perplexity) + "\n";
            std::cerr << "epoch " << e.epoch << " train_ppl "
                      << e.train_perplexity << " val_ppl "
                      << e.val_perplexity << "\n";
        });
    for (const std::string& w : result.warnings)
        std::cerr << "warning: " << w << "\n";

    save_checkpoint(result.checkpoint, rc.out_path);
    write_file_atomic(rc.out_path + ".manifest", rc.manifest());
    write_file_atomic(rc.out_path + ".log", log);
    std::cout << "best_val_perplexity: "
              << result.checkpoint.best_val_perplexity << "\n"
              << "checkpoint: " << rc.out_path << "\n";
    return 0;
}

int cmd_generate(const RunConfig& rc, const std::string& in,
                 CLI::App* cmd, std::size_t beam_flag) {
    if (rc.checkpoint_path.empty())
        throw DataError("generate needs a checkpoint path");
    ModelCheckpoint cp = load_checkpoint(rc.checkpoint_path);
    Model model = cp.to_model();
    const std::size_t beam =
        cmd->count("--beam") ? beam_flag : model.config().beam;
    if (beam < 1)
        throw DataError("generate: beam must be >= 1");

    std::string body;
    std::vector<Instance> instances = load_instances(in);
    for (std::size_t i = 0; i < instances.size(); ++i) {
        if (instances[i].triples.empty()) {
            std::cerr << "warning: instance " << i
                      << " has no triples, emitting an empty line\n";
            body += '\n';
            continue;
        }
        DelexMapping mapping;
        const Instance* source = &instances[i];
        DelexResult delexed;
        if (model.config().delex) {
            delexed = delexicalize(instances[i]);
            mapping = delexed.mapping;
            source = &delexed.instance;
        }
        std::vector<std::string> tokens =
            model.generate(model.transform(source->triples), beam,
                           model.config().max_len);
        if (model.config().delex) {
            std::vector<std::string> warnings;
            body += relexicalize(tokens, mapping, &warnings);
            for (const std::string& w : warnings)
                std::cerr << "warning: instance " << i << ": " << w << "\n";
        } else {
            body += join_tokens(tokens);
        }
        body += '\n';
    }
    write_or_print(rc.out_path, body);
    return 0;
}

int cmd_evaluate(const std::string& candidates, const std::string& references,
                 const std::string& out) {
    auto cand = load_token_lines(candidates);
    auto refs = load_token_lines(references);
    if (cand.size() != refs.size())
        throw DataError("evaluate: " + std::to_string(cand.size()) +
                        " candidates vs " + std::to_string(refs.size()) +
                        " references");
    EvalReport report = evaluate(cand, refs);
    write_or_print(out, report.to_json() + "\n");
    return 0;
}

int cmd_gradcheck(const RunConfig& rc, bool use_config, bool seed_given,
                  bool hidden_given, bool layers_given) {
    // The default fixture is tiny and pinned at a point whose smallest
    // nonzero gradient entry sits well above the finite-difference noise
    // floor; explicit flags or a config file take over field by field.
    TrainConfig cfg = rc.train;
    if (!use_config) {
        if (!hidden_given)
            cfg.hidden = 4;
        if (!layers_given)
            cfg.layers = 1;
        if (!seed_given)
            cfg.seed = 28;
        cfg.init_range = 0.4;
    }

    std::vector<Instance> corpus = synth_corpus(cfg.seed, 1, 4, 2, 3);
    Vocabulary vocab = build_vocab(corpus, 1);
    Model model(cfg, std::move(vocab));
    MultiGraph mg = model.transform(corpus[0].triples);
    std::vector<std::size_t> reference = model.token_ids(corpus[0].text);

    const double err = grad_check(
        [&] { return model.loss(mg, reference); },
        model.params().pointers(), 1e-5);
    std::cout << "max_relative_error: " << err << "\n";
    if (err >= 1e-4) {
        std::cerr << "gradcheck failed: " << err << " >= 1e-4\n";
        return 3;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"knowledge-graph-to-text engine with multi-graph "
                 "convolutional encoding"};
    app.require_subcommand(1);
    Flags f;

    auto add_common = [&f](CLI::App* cmd) {
        cmd->add_option("--config", f.config_path, "key = value config file");
        cmd->add_option("--seed", f.seed, "random seed");
        cmd->add_option("--layers", f.layers, "encoder layers");
        cmd->add_option("--hidden", f.hidden, "hidden/embedding width");
        cmd->add_option("--aggregation", f.aggregation, "sum|avg|conv");
        cmd->add_option("--graphs", f.graphs,
                        "comma-separated graph labels to keep");
        cmd->add_option("--beam", f.beam, "beam size");
        cmd->add_option("--delex", f.delex, "on|off");
        cmd->add_option("--out", f.out_path, "output path");
    };

    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic corpus");
    std::size_t n_instances = 16, n_entities = 24, n_relations = 6,
                n_triples = 5;
    synth->add_option("--seed", f.seed, "random seed");
    synth->add_option("--instances", n_instances, "instance count");
    synth->add_option("--entities", n_entities, "entity pool size");
    synth->add_option("--relations", n_relations, "relation pool size");
    synth->add_option("--triples", n_triples, "triples per instance");
    synth->add_option("--out", f.out_path, "output instance file");

    CLI::App* stats = app.add_subcommand("stats", "corpus statistics");
    stats->add_option("--in", f.in_path, "instance file")->required();

    CLI::App* transform =
        app.add_subcommand("transform", "dump transformed graphs");
    transform->add_option("--in", f.in_path, "instance file")->required();
    transform->add_flag("--levi", f.levi, "emit the Levi transformation");
    transform->add_option("--out", f.out_path, "output path");

    CLI::App* train_cmd = app.add_subcommand("train", "train a model");
    add_common(train_cmd);
    train_cmd->add_option("--train", f.train_path, "training instance file");
    train_cmd->add_option("--valid", f.valid_path, "validation instance file");

    CLI::App* generate = app.add_subcommand("generate", "decode descriptions");
    add_common(generate);
    generate->add_option("--checkpoint", f.checkpoint_path, "checkpoint file");
    generate->add_option("--in", f.in_path, "instance file")->required();

    CLI::App* evaluate_cmd =
        app.add_subcommand("evaluate", "score candidates against references");
    evaluate_cmd->add_option("--candidates", f.candidates_path,
                             "token-per-line candidate file")
        ->required();
    evaluate_cmd->add_option("--references", f.references_path,
                             "token-per-line reference file")
        ->required();
    evaluate_cmd->add_option("--out", f.out_path, "report path");

    CLI::App* gradcheck =
        app.add_subcommand("gradcheck", "finite-difference gradient check");
    add_common(gradcheck);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (synth->parsed())
            return cmd_synth(f.seed, n_instances, n_entities, n_relations,
                             n_triples, f.out_path);
        if (stats->parsed())
            return cmd_stats(f.in_path);
        if (transform->parsed())
            return cmd_transform(f.in_path, f.levi, f.out_path);
        if (train_cmd->parsed())
            return cmd_train(effective_config(f, train_cmd));
        if (generate->parsed())
            return cmd_generate(effective_config(f, generate), f.in_path,
                                generate, f.beam);
        if (evaluate_cmd->parsed())
            return cmd_evaluate(f.candidates_path, f.references_path,
                                f.out_path);
        if (gradcheck->parsed())
            return cmd_gradcheck(effective_config(f, gradcheck),
                                 flag_given(gradcheck, "--config"),
                                 flag_given(gradcheck, "--seed"),
                                 flag_given(gradcheck, "--hidden"),
                                 flag_given(gradcheck, "--layers"));
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
