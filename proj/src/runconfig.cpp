#include "mgcn/runconfig.hpp"

#include <fstream>
#include <sstream>

#include "mgcn/error.hpp"

namespace mgcn {

namespace {

std::uint64_t parse_uint(const std::string& v, const std::string& where) {
    try {
        std::size_t used = 0;
        const std::uint64_t out = std::stoull(v, &used);
        if (used != v.size())
            throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw DataError(where + ": expected a non-negative integer, got '" +
                        v + "'");
    }
}

double parse_real(const std::string& v, const std::string& where) {
    try {
        std::size_t used = 0;
        const double out = std::stod(v, &used);
        if (used != v.size())
            throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw DataError(where + ": expected a number, got '" + v + "'");
    }
}

bool parse_bool(const std::string& v, const std::string& where) {
    if (v == "on" || v == "true" || v == "1")
        return true;
    if (v == "off" || v == "false" || v == "0")
        return false;
    throw DataError(where + ": expected on/off, got '" + v + "'");
}

} // namespace

void RunConfig::set(const std::string& key, const std::string& value,
                    const std::string& where) {
    if (key == "hidden")
        train.hidden = parse_uint(value, where);
    else if (key == "layers")
        train.layers = parse_uint(value, where);
    else if (key == "aggregation") {
        auto agg = aggregation_from_name(value);
        if (!agg)
            throw DataError(where + ": unknown aggregation '" + value + "'");
        train.aggregation = *agg;
    } else if (key == "learning_rate")
        train.learning_rate = parse_real(value, where);
    else if (key == "batch_size")
        train.batch_size = parse_uint(value, where);
    else if (key == "beam")
        train.beam = parse_uint(value, where);
    else if (key == "seed")
        train.seed = parse_uint(value, where);
    else if (key == "patience")
        train.patience = parse_uint(value, where);
    else if (key == "min_delta")
        train.min_delta = parse_real(value, where);
    else if (key == "max_epochs")
        train.max_epochs = parse_uint(value, where);
    else if (key == "graphs")
        train.graphs = graphs_from_string(value);
    else if (key == "delex")
        train.delex = parse_bool(value, where);
    else if (key == "input_feeding")
        train.input_feeding = parse_bool(value, where);
    else if (key == "degree_norm")
        train.degree_norm = parse_bool(value, where);
    else if (key == "min_freq")
        train.min_freq = static_cast<int>(parse_uint(value, where));
    else if (key == "max_len")
        train.max_len = parse_uint(value, where);
    else if (key == "init_range")
        train.init_range = parse_real(value, where);
    else if (key == "grad_clip")
        train.grad_clip = parse_real(value, where);
    else if (key == "train")
        train_path = value;
    else if (key == "valid")
        valid_path = value;
    else if (key == "checkpoint")
        checkpoint_path = value;
    else if (key == "out")
        out_path = value;
    else
        throw DataError(where + ": unknown configuration key '" + key + "'");
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw DataError("cannot read config file '" + path + "'");
    RunConfig rc;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#')
            continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw DataError(path + ":" + std::to_string(lineno) +
                            ": expected 'key = value'");
        rc.set(trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)),
               path + ":" + std::to_string(lineno));
    }
    return rc;
}

std::string RunConfig::manifest() const {
    std::ostringstream os;
    os.precision(17);
    os << "hidden = " << train.hidden << '\n'
       << "layers = " << train.layers << '\n'
       << "aggregation = " << aggregation_name(train.aggregation) << '\n'
       << "learning_rate = " << train.learning_rate << '\n'
       << "batch_size = " << train.batch_size << '\n'
       << "beam = " << train.beam << '\n'
       << "seed = " << train.seed << '\n'
       << "patience = " << train.patience << '\n'
       << "min_delta = " << train.min_delta << '\n'
       << "max_epochs = " << train.max_epochs << '\n'
       << "graphs = " << graphs_to_string(train.graphs) << '\n'
       << "delex = " << (train.delex ? "on" : "off") << '\n'
       << "input_feeding = " << (train.input_feeding ? "on" : "off") << '\n'
       << "degree_norm = " << (train.degree_norm ? "on" : "off") << '\n'
       << "min_freq = " << train.min_freq << '\n'
       << "max_len = " << train.max_len << '\n'
       << "init_range = " << train.init_range << '\n'
       << "grad_clip = " << train.grad_clip << '\n';
    if (!train_path.empty())
        os << "train = " << train_path << '\n';
    if (!valid_path.empty())
        os << "valid = " << valid_path << '\n';
    if (!checkpoint_path.empty())
        os << "checkpoint = " << checkpoint_path << '\n';
    if (!out_path.empty())
        os << "out = " << out_path << '\n';
    return os.str();
}

} // namespace mgcn
