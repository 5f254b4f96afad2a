#pragma once
// Acceptance criteria as runnable checks. Each returns a verdict, a one-line
// measurement summary and the tables it produced; the CLI and the acceptance
// test binary share them.

#include <filesystem>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "transwave/csv.hpp"
#include "transwave/elliptic.hpp"
#include "transwave/jet.hpp"
#include "transwave/model.hpp"

namespace tw {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
    double budget = 0.0;  // runtime limit in seconds; 0 = none
    std::vector<std::pair<std::string, CsvTable>> tables;
};

struct Criterion {
    int id;
    std::string name;
    double budget;
    std::function<CriterionResult()> run;
};

// The twelve criteria in order. Runtime over budget fails the criterion.
std::vector<Criterion> acceptance_criteria();
CriterionResult run_criterion(const Criterion& c);

// Block system with b = A − A(0, centre) time jets along the solution jet (s = jet order), ψ = standard bump.
BlockSystem born_system(const CoefficientModel& model, const Jet& jet, double eps);
// Right-hand side K_k = sin(π(k+1)x^1).
BlockVector born_rhs(const BlockSystem& sys);
// ρ̂: exp(fitted slope) when at least five increments exist, else the last ratio.
double rho_hat(const BornDiagnostics& d);

// Deterministic mini-suite whose CSVs are compared across thread counts.
std::vector<std::pair<std::string, std::string>> determinism_payload();

}  // namespace tw
