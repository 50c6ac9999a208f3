#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "certinum/program.hpp"

namespace certinum::interp {

using lang::Env;
using lang::FuncDef;
using lang::Funcs;
using lang::Program;
using lang::Value;

/// Argument binding for a program parameter: a value, or a function
/// definition for fun-sorted parameters.
using ArgBinding = std::variant<Value, FuncDef>;

struct ProgState {
  Env vars;
  Funcs funcs;
};

enum class TraceKind { LoopHead, Assignment, Branch, Termination };

struct TraceEvent {
  TraceKind kind = TraceKind::LoopHead;
  int loop_id = -1;               // LoopHead
  std::uint64_t iteration = 0;    // LoopHead: cumulative head count for the loop
  std::uint64_t entry = 0;        // LoopHead: loop entry session (nested re-entries)
  std::string target;             // Assignment
  bool branch_taken = false;      // Branch: then-branch taken
  Env vars;                       // full snapshot after the event
};

bool operator==(const TraceEvent& a, const TraceEvent& b);

enum class Outcome { Terminated, BudgetExhausted, RuntimeError };

struct ExecOutcome {
  Outcome outcome = Outcome::Terminated;
  ProgState final_state;          // Terminated only
  std::string error;              // RuntimeError only
  std::vector<TraceEvent> trace;  // present in all cases
  std::uint64_t steps = 0;

  bool terminated() const { return outcome == Outcome::Terminated; }
};

/// Execute a program. Deterministic; every assignment and guard evaluation
/// consumes one step of the budget. Terminated iff the program halts within
/// budget; evaluation failures become RuntimeError outcomes.
ExecOutcome run(const Program& p, const std::vector<ArgBinding>& args,
                std::uint64_t budget);

/// Alias of run: the semantics has no nondeterminism anywhere, so repeated
/// invocations yield bit-identical traces.
ExecOutcome run_bounded_deterministic(const Program& p,
                                      const std::vector<ArgBinding>& args,
                                      std::uint64_t budget);

/// Bind argument values to parameter names, checking count and sorts.
ProgState bind_args(const Program& p, const std::vector<ArgBinding>& args);

/// One line-delimited record per event, fields kind/loop/iter/vars.
std::string trace_to_text(const std::vector<TraceEvent>& trace);

}  // namespace certinum::interp
