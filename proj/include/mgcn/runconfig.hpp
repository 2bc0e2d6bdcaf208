#pragma once

#include <string>

#include "mgcn/model.hpp"

namespace mgcn {

// Textual key = value configuration mirroring TrainConfig plus file paths.
// Unknown keys are rejected; the manifest echoes every effective value and
// is itself a valid configuration file.
struct RunConfig {
    TrainConfig train;
    std::string train_path;
    std::string valid_path;
    std::string checkpoint_path;
    std::string out_path;

    static RunConfig from_file(const std::string& path);
    // `where` names the source (file:line or flag) in error messages.
    void set(const std::string& key, const std::string& value,
             const std::string& where);
    std::string manifest() const;
};

} // namespace mgcn
