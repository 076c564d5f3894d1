#pragma once

#include <string>
#include <vector>

#include "tfboost/grid.hpp"

namespace tfboost {

// Single-file dataset format: header "id,y,s:<name>...,t:<time>..." where the
// numeric suffix of each t: column is a grid time (strictly increasing) and
// s: columns are scalar covariates. y cells may be empty on every row for
// prediction-only files.
struct Dataset {
  std::vector<std::string> ids;
  std::vector<std::string> scalar_names;
  FunctionalSample sample;
};

Dataset read_dataset_string(const std::string& text, const std::string& origin = "<string>");
Dataset read_dataset_file(const std::string& path);

std::string write_dataset_string(const Dataset& data);
void write_dataset_file(const Dataset& data, const std::string& path);

std::string predictions_csv(const std::vector<std::string>& ids,
                            const Eigen::VectorXd& predictions);

}  // namespace tfboost
