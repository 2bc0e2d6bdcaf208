#include "mgcn/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <set>

#include <json.hpp>

#include "mgcn/error.hpp"
#include "mgcn/io.hpp"

static_assert(std::endian::native == std::endian::little,
              "checkpoint format assumes a little-endian host");

namespace mgcn {

using nlohmann::json;

namespace {

json config_json(const TrainConfig& c) {
    json j;
    j["hidden"] = c.hidden;
    j["layers"] = c.layers;
    j["aggregation"] = aggregation_name(c.aggregation);
    j["learning_rate"] = c.learning_rate;
    j["batch_size"] = c.batch_size;
    j["beam"] = c.beam;
    j["seed"] = c.seed;
    j["patience"] = c.patience;
    j["min_delta"] = c.min_delta;
    j["max_epochs"] = c.max_epochs;
    json graphs = json::array();
    for (EdgeLabel l : kAllEdgeLabels)
        if (c.graphs.count(l))
            graphs.push_back(edge_label_name(l));
    j["graphs"] = std::move(graphs);
    j["delex"] = c.delex;
    j["input_feeding"] = c.input_feeding;
    j["degree_norm"] = c.degree_norm;
    j["min_freq"] = c.min_freq;
    j["max_len"] = c.max_len;
    j["init_range"] = c.init_range;
    j["grad_clip"] = c.grad_clip;
    return j;
}

TrainConfig config_from(const json& j) {
    TrainConfig c;
    try {
        c.hidden = j.at("hidden").get<std::size_t>();
        c.layers = j.at("layers").get<std::size_t>();
        auto agg = aggregation_from_name(j.at("aggregation").get<std::string>());
        if (!agg)
            throw DataError("config: unknown aggregation '" +
                            j.at("aggregation").get<std::string>() + "'");
        c.aggregation = *agg;
        c.learning_rate = j.at("learning_rate").get<double>();
        c.batch_size = j.at("batch_size").get<std::size_t>();
        c.beam = j.at("beam").get<std::size_t>();
        c.seed = j.at("seed").get<std::uint64_t>();
        c.patience = j.at("patience").get<std::size_t>();
        c.min_delta = j.at("min_delta").get<double>();
        c.max_epochs = j.at("max_epochs").get<std::size_t>();
        c.graphs.clear();
        for (const auto& g : j.at("graphs")) {
            auto label = edge_label_from_name(g.get<std::string>());
            if (!label)
                throw DataError("config: unknown graph label '" +
                                g.get<std::string>() + "'");
            c.graphs.insert(*label);
        }
        c.delex = j.at("delex").get<bool>();
        c.input_feeding = j.at("input_feeding").get<bool>();
        c.degree_norm = j.at("degree_norm").get<bool>();
        c.min_freq = j.at("min_freq").get<int>();
        c.max_len = j.at("max_len").get<std::size_t>();
        c.init_range = j.at("init_range").get<double>();
        c.grad_clip = j.at("grad_clip").get<double>();
    } catch (const json::exception& e) {
        throw DataError(std::string("config: ") + e.what());
    }
    c.check();
    return c;
}

} // namespace

std::string config_to_json(const TrainConfig& config) {
    return config_json(config).dump();
}

TrainConfig config_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw DataError(std::string("config: invalid JSON: ") + e.what());
    }
    return config_from(j);
}

ModelCheckpoint ModelCheckpoint::from_model(const Model& model,
                                            std::uint64_t step,
                                            double best_val_perplexity) {
    ModelCheckpoint cp;
    cp.config = model.config();
    cp.vocab = model.vocab();
    cp.step = step;
    cp.best_val_perplexity = best_val_perplexity;
    for (const auto& p : model.params().all())
        cp.tensors.emplace_back(p->name(), p->tensor());
    return cp;
}

Model ModelCheckpoint::to_model() const {
    Vocabulary v(std::vector<std::string>(
                     vocab.tokens().begin() + Vocabulary::kReservedCount,
                     vocab.tokens().end()),
                 vocab.min_freq());
    Model model(config, std::move(v));
    std::set<std::string> loaded;
    for (const auto& [name, tensor] : tensors) {
        Parameter* p = model.params().find(name);
        if (!p)
            throw DataError("checkpoint: unknown parameter '" + name + "'");
        if (!p->tensor().same_shape(tensor))
            throw DataError("checkpoint: parameter '" + name + "' has shape " +
                            tensor.shape_str() + ", model expects " +
                            p->tensor().shape_str());
        if (!loaded.insert(name).second)
            throw DataError("checkpoint: duplicate parameter '" + name + "'");
        p->tensor() = tensor;
    }
    if (loaded.size() != model.params().all().size())
        throw DataError("checkpoint: expected " +
                        std::to_string(model.params().all().size()) +
                        " tensors, found " + std::to_string(loaded.size()));
    return model;
}

void save_checkpoint(const ModelCheckpoint& cp, const std::string& path) {
    json header;
    header["config"] = config_json(cp.config);
    header["vocab"] = std::vector<std::string>(
        cp.vocab.tokens().begin() + Vocabulary::kReservedCount,
        cp.vocab.tokens().end());
    header["min_freq"] = cp.vocab.min_freq();
    header["step"] = cp.step;
    header["best_val_perplexity"] = cp.best_val_perplexity;
    json index = json::array();
    std::uint64_t offset = 0;
    for (const auto& [name, tensor] : cp.tensors) {
        json e;
        e["name"] = name;
        e["shape"] = tensor.shape();
        e["offset"] = offset;
        index.push_back(std::move(e));
        offset += tensor.size() * sizeof(double);
    }
    header["tensors"] = std::move(index);
    const std::string header_text = header.dump();

    std::string body;
    body.reserve(16 + header_text.size() + offset);
    body += "MGCN";
    auto append_raw = [&body](const void* p, std::size_t n) {
        body.append(static_cast<const char*>(p), n);
    };
    const std::uint32_t version = cp.version;
    append_raw(&version, sizeof(version));
    const std::uint64_t hlen = header_text.size();
    append_raw(&hlen, sizeof(hlen));
    body += header_text;
    for (const auto& [name, tensor] : cp.tensors)
        append_raw(tensor.data(), tensor.size() * sizeof(double));
    write_file_atomic(path, body);
}

ModelCheckpoint load_checkpoint(const std::string& path) {
    const std::string body = read_file(path);
    std::size_t pos = 0;
    auto need = [&](std::size_t n, const char* what) {
        if (pos + n > body.size())
            throw DataError("checkpoint '" + path + "' truncated at byte " +
                            std::to_string(body.size()) + " while reading " +
                            what);
    };
    need(4, "magic");
    if (body.compare(0, 4, "MGCN") != 0)
        throw DataError("checkpoint '" + path + "': bad magic at byte 0");
    pos = 4;
    std::uint32_t version = 0;
    need(sizeof(version), "version");
    std::memcpy(&version, body.data() + pos, sizeof(version));
    pos += sizeof(version);
    if (version != kCheckpointVersion)
        throw DataError("checkpoint '" + path + "': format version " +
                        std::to_string(version) + ", this build reads " +
                        std::to_string(kCheckpointVersion));
    std::uint64_t hlen = 0;
    need(sizeof(hlen), "header length");
    std::memcpy(&hlen, body.data() + pos, sizeof(hlen));
    pos += sizeof(hlen);
    need(hlen, "header");
    json header;
    try {
        header = json::parse(body.substr(pos, hlen));
    } catch (const json::exception& e) {
        throw DataError("checkpoint '" + path + "': bad header at byte " +
                        std::to_string(pos) + ": " + e.what());
    }
    pos += hlen;

    ModelCheckpoint cp;
    cp.version = version;
    try {
        cp.config = config_from(header.at("config"));
        std::vector<std::string> tokens =
            header.at("vocab").get<std::vector<std::string>>();
        try {
            cp.vocab = Vocabulary(std::move(tokens),
                                  header.at("min_freq").get<int>());
        } catch (const InternalError& e) {
            throw DataError("checkpoint '" + path + "': bad vocabulary: " +
                            e.what());
        }
        cp.step = header.at("step").get<std::uint64_t>();
        cp.best_val_perplexity =
            header.at("best_val_perplexity").get<double>();
        const std::size_t payload_start = pos;
        for (const auto& e : header.at("tensors")) {
            const std::string name = e.at("name").get<std::string>();
            const auto shape = e.at("shape").get<std::vector<std::size_t>>();
            const auto offset = e.at("offset").get<std::uint64_t>();
            Tensor t(shape);
            pos = payload_start + offset;
            need(t.size() * sizeof(double), ("tensor '" + name + "'").c_str());
            std::memcpy(t.data(), body.data() + pos,
                        t.size() * sizeof(double));
            cp.tensors.emplace_back(name, std::move(t));
        }
    } catch (const json::exception& e) {
        throw DataError("checkpoint '" + path + "': bad header field: " +
                        e.what());
    }
    return cp;
}

} // namespace mgcn
