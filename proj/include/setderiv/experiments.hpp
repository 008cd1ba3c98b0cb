#pragma once

#include <map>

#include "setderiv/config.hpp"
#include "setderiv/io.hpp"

namespace setderiv {

struct ExperimentOutcome {
    std::string name;
    bool pass = false;
    bool strict_pass = false;             // inconclusive verdicts count as failure
    std::vector<std::string> lines;       // per-check report lines
    CsvWriter csv;
    std::map<std::string, std::string> verdict;  // flat key/value summary
    std::vector<PlotSeries> plot;
    double seconds = 0;
};

struct ExperimentInfo {
    std::string name;
    std::string description;
    std::string anchor;  // the identity or theorem the run validates
    ExperimentOutcome (*run)(const ExperimentConfig&);
};

const std::vector<ExperimentInfo>& experiment_registry();
const ExperimentInfo& find_experiment(const std::string& name);
ExperimentOutcome run_experiment(const ExperimentConfig& cfg);

/// Write report.csv, verdict.json and plot.svg under out_dir/<name>/.
void write_artifacts(const ExperimentOutcome& oc, const std::string& out_dir);

}  // namespace setderiv
