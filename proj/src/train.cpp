#include "mgcn/train.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mgcn/adam.hpp"
#include "mgcn/error.hpp"

namespace mgcn {

namespace {

struct Prepared {
    MultiGraph graph;
    std::vector<std::size_t> reference;
};

std::vector<Prepared> prepare(const Model& model,
                              const std::vector<Instance>& instances,
                              const char* split,
                              std::vector<std::string>* warnings) {
    std::vector<Prepared> out;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        if (instances[i].triples.empty()) {
            if (warnings)
                warnings->push_back(std::string(split) + " instance " +
                                    std::to_string(i) +
                                    " has no triples, skipped");
            continue;
        }
        out.push_back({model.transform(instances[i].triples),
                       model.token_ids(instances[i].text)});
    }
    return out;
}

double perplexity_prepared(const Model& model,
                           const std::vector<Prepared>& prepared) {
    double total_nll = 0.0;
    std::size_t total_tokens = 0;
    for (const Prepared& p : prepared) {
        total_nll += model.loss(p.graph, p.reference).value()[0];
        total_tokens += p.reference.size() + 1; // end-of-sequence counts
    }
    if (total_tokens == 0)
        throw DataError("perplexity: no tokens");
    return std::exp(total_nll / static_cast<double>(total_tokens));
}

void clip_gradients(ParameterStore& store, double max_norm) {
    double sq = 0.0;
    for (const auto& p : store.all())
        for (std::size_t i = 0; i < p->grad().size(); ++i)
            sq += p->grad()[i] * p->grad()[i];
    const double norm = std::sqrt(sq);
    if (norm <= max_norm || norm == 0.0)
        return;
    const double factor = max_norm / norm;
    for (const auto& p : store.all())
        for (std::size_t i = 0; i < p->grad().size(); ++i)
            p->grad()[i] *= factor;
}

} // namespace

double perplexity(const Model& model,
                  const std::vector<Instance>& instances) {
    if (instances.empty())
        throw DataError("perplexity: empty instance list");
    return perplexity_prepared(model,
                               prepare(model, instances, "eval", nullptr));
}

TrainResult train(const TrainConfig& config,
                  const std::vector<Instance>& train_instances,
                  const std::vector<Instance>& valid_instances,
                  const EpochCallback& on_epoch) {
    config.check();
    if (train_instances.empty() || valid_instances.empty())
        throw DataError("train: empty split");

    TrainResult result;
    Vocabulary vocab = build_vocab(train_instances, config.min_freq);
    Model model(config, std::move(vocab));

    std::vector<Prepared> train_set =
        prepare(model, train_instances, "train", &result.warnings);
    if (train_set.empty())
        throw DataError("train: every training instance was skipped");
    std::vector<Prepared> valid_set =
        prepare(model, valid_instances, "valid", &result.warnings);
    if (valid_set.empty())
        throw DataError("train: every validation instance was skipped");

    Adam adam(config.learning_rate);
    std::vector<Parameter*> params = model.params().pointers();
    std::mt19937_64 shuffle_rng(config.seed + 1);

    double best_ppl = std::numeric_limits<double>::infinity();
    std::vector<std::pair<std::string, Tensor>> best_tensors;
    std::uint64_t best_step = 0;
    std::size_t epochs_since_improvement = 0;

    std::vector<std::size_t> order(train_set.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;

    for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), shuffle_rng);

        double epoch_nll = 0.0;
        std::size_t epoch_tokens = 0;
        for (std::size_t start = 0; start < order.size();
             start += config.batch_size) {
            const std::size_t end =
                std::min(order.size(), start + config.batch_size);
            Var batch_loss;
            std::size_t batch_tokens = 0;
            for (std::size_t i = start; i < end; ++i) {
                const Prepared& p = train_set[order[i]];
                Var l = model.loss(p.graph, p.reference);
                batch_loss = batch_loss.defined() ? add(batch_loss, l) : l;
                batch_tokens += p.reference.size() + 1;
            }
            epoch_nll += batch_loss.value()[0];
            epoch_tokens += batch_tokens;
            Var loss = div_scalar(batch_loss,
                                  static_cast<double>(batch_tokens));
            backward(loss);
            if (config.grad_clip > 0.0)
                clip_gradients(model.params(), config.grad_clip);
            adam.step(params);
        }

        EpochLog log;
        log.epoch = epoch;
        log.train_perplexity =
            std::exp(epoch_nll / static_cast<double>(epoch_tokens));
        log.val_perplexity = perplexity_prepared(model, valid_set);
        result.epochs.push_back(log);
        if (on_epoch)
            on_epoch(log);

        if (best_ppl - log.val_perplexity >= config.min_delta) {
            best_ppl = log.val_perplexity;
            best_step = adam.steps();
            best_tensors.clear();
            for (const auto& p : model.params().all())
                best_tensors.emplace_back(p->name(), p->tensor());
            epochs_since_improvement = 0;
        } else {
            ++epochs_since_improvement;
        }
        if (epochs_since_improvement >= config.patience)
            break;
    }

    if (best_tensors.empty()) {
        // validation never improved on infinity; keep the final state
        best_ppl = perplexity_prepared(model, valid_set);
        best_step = adam.steps();
        for (const auto& p : model.params().all())
            best_tensors.emplace_back(p->name(), p->tensor());
    }

    result.checkpoint.version = kCheckpointVersion;
    result.checkpoint.config = config;
    result.checkpoint.vocab = model.vocab();
    result.checkpoint.tensors = std::move(best_tensors);
    result.checkpoint.step = best_step;
    result.checkpoint.best_val_perplexity = best_ppl;
    return result;
}

} // namespace mgcn
