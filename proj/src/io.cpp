#include "mgcn/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mgcn/error.hpp"
#include "mgcn/preprocess.hpp"

namespace mgcn {

using nlohmann::json;

std::vector<Instance> read_instances(std::istream& is,
                                     const std::string& name) {
    std::vector<Instance> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (trim(line).empty())
            continue;
        const std::string where = name + ":" + std::to_string(lineno);
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw DataError(where + ": invalid JSON: " + e.what());
        }
        Instance inst;
        try {
            inst.main_entity = j.at("main_entity").get<std::string>();
            for (const auto& t : j.at("topic_entities"))
                inst.topic_entities.push_back(t.get<std::string>());
            for (const auto& arr : j.at("triples")) {
                if (!arr.is_array() || arr.size() != 3)
                    throw DataError(where + ": triple is not a 3-element array");
                Triple t{arr[0].get<std::string>(), arr[1].get<std::string>(),
                         arr[2].get<std::string>()};
                if (trim(t.subject).empty() || trim(t.predicate).empty() ||
                    trim(t.object).empty())
                    throw DataError(where + ": triple with empty field");
                bool dup = false;
                for (const Triple& seen : inst.triples)
                    if (seen == t) {
                        dup = true;
                        break;
                    }
                if (!dup)
                    inst.triples.push_back(std::move(t));
            }
            inst.text = tokenize(j.at("text").get<std::string>());
        } catch (const json::exception& e) {
            throw DataError(where + ": " + e.what());
        }
        inst.validate(where);
        out.push_back(std::move(inst));
    }
    return out;
}

std::vector<Instance> load_instances(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw DataError("cannot read instance file '" + path + "'");
    return read_instances(is, path);
}

std::string instance_to_json_line(const Instance& inst) {
    json j;
    j["main_entity"] = inst.main_entity;
    j["topic_entities"] = inst.topic_entities;
    json triples = json::array();
    for (const Triple& t : inst.triples)
        triples.push_back({t.subject, t.predicate, t.object});
    j["triples"] = std::move(triples);
    j["text"] = join_tokens(inst.text);
    return j.dump();
}

void save_instances(const std::vector<Instance>& instances,
                    const std::string& path) {
    std::string body;
    for (const Instance& inst : instances) {
        body += instance_to_json_line(inst);
        body += '\n';
    }
    write_file_atomic(path, body);
}

std::vector<Triple> load_triples(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw DataError("cannot read triple file '" + path + "'");
    std::vector<Triple> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (trim(line).empty())
            continue;
        std::size_t t1 = line.find('\t');
        std::size_t t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
        if (t1 == std::string::npos || t2 == std::string::npos)
            throw DataError(path + ":" + std::to_string(lineno) +
                            ": expected three tab-separated fields");
        Triple t{trim(line.substr(0, t1)), trim(line.substr(t1 + 1, t2 - t1 - 1)),
                 trim(line.substr(t2 + 1))};
        if (t.subject.empty() || t.predicate.empty() || t.object.empty())
            throw DataError(path + ":" + std::to_string(lineno) +
                            ": empty field");
        out.push_back(std::move(t));
    }
    return out;
}

void save_triples(const std::vector<Triple>& triples,
                  const std::string& path) {
    std::string body;
    for (const Triple& t : triples) {
        body += t.subject;
        body += '\t';
        body += t.predicate;
        body += '\t';
        body += t.object;
        body += '\n';
    }
    write_file_atomic(path, body);
}

std::vector<std::vector<std::string>>
load_token_lines(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw DataError("cannot read file '" + path + "'");
    std::vector<std::vector<std::string>> out;
    std::string line;
    while (std::getline(is, line)) {
        std::vector<std::string> toks;
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok)
            toks.push_back(tok);
        out.push_back(std::move(toks));
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw DataError("cannot read file '" + path + "'");
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw DataError("cannot write file '" + path + "'");
    os << content;
    if (!os)
        throw DataError("write failed for '" + path + "'");
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    write_file(tmp, content);
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw DataError("cannot rename '" + tmp + "' to '" + path + "'");
}

} // namespace mgcn
