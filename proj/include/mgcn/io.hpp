#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mgcn/kg.hpp"

namespace mgcn {

// Instance files hold one JSON object per line with keys main_entity,
// topic_entities, triples (array of [subject, predicate, object]) and text.
// Unknown keys are ignored. Text is tokenized on load and joined with
// single spaces on save.
std::vector<Instance> load_instances(const std::string& path);
std::vector<Instance> read_instances(std::istream& is,
                                     const std::string& name);
void save_instances(const std::vector<Instance>& instances,
                    const std::string& path);
std::string instance_to_json_line(const Instance& inst);

// Raw knowledge-graph files: tab-separated subject, predicate, object, one
// triple per line.
std::vector<Triple> load_triples(const std::string& path);
void save_triples(const std::vector<Triple>& triples, const std::string& path);

// One whitespace-tokenized sequence per line.
std::vector<std::vector<std::string>> load_token_lines(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
// write-temp-then-rename
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace mgcn
