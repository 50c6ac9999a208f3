#include "certinum/interp.hpp"

#include <cmath>
#include <sstream>

#include "certinum/eval.hpp"
#include "certinum/printer.hpp"

namespace certinum::interp {

using lang::Cond;
using lang::EvalError;
using lang::Expr;
using lang::Param;
using lang::Sort;
using lang::Stmt;
using lang::StmtKind;

bool operator==(const TraceEvent& a, const TraceEvent& b) {
  return a.kind == b.kind && a.loop_id == b.loop_id && a.iteration == b.iteration &&
         a.entry == b.entry && a.target == b.target && a.branch_taken == b.branch_taken &&
         a.vars == b.vars;
}

ProgState bind_args(const Program& p, const std::vector<ArgBinding>& args) {
  if (args.size() != p.params.size())
    throw EvalError("argument count mismatch: expected " + std::to_string(p.params.size()) +
                    ", got " + std::to_string(args.size()));
  ProgState st;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const Param& param = p.params[i];
    if (param.sort.kind == Sort::Kind::Fun) {
      const FuncDef* f = std::get_if<FuncDef>(&args[i]);
      if (!f) throw EvalError("parameter '" + param.name + "' requires a function binding");
      st.funcs[param.name] = *f;
      continue;
    }
    const Value* v = std::get_if<Value>(&args[i]);
    if (!v) throw EvalError("parameter '" + param.name + "' requires a value binding");
    switch (param.sort.kind) {
      case Sort::Kind::Real:
        if (v->is_vec()) throw EvalError("parameter '" + param.name + "' expects a real");
        st.vars[param.name] = Value::of_real(v->as_double());
        break;
      case Sort::Kind::Nat:
        if (!v->is_nat()) {
          double d = v->as_double();
          if (v->is_vec() || d < 0 || d != std::floor(d))
            throw EvalError("parameter '" + param.name + "' expects a natural");
          st.vars[param.name] = Value::of_nat(static_cast<std::uint64_t>(d));
        } else {
          st.vars[param.name] = *v;
        }
        break;
      case Sort::Kind::Vec:
        if (!v->is_vec() || (param.sort.dim && v->vec.size() != param.sort.dim))
          throw EvalError("parameter '" + param.name + "' expects vec[" +
                          std::to_string(param.sort.dim) + "]");
        st.vars[param.name] = *v;
        break;
      case Sort::Kind::Fun:
        break;
    }
  }
  return st;
}

namespace {

struct BudgetExhausted {};

class Machine {
 public:
  Machine(const Program& p, ProgState st, std::uint64_t budget)
      : state_(std::move(st)), budget_(budget) {
    loops_ = lang::collect_loops(p);
  }

  ExecOutcome exec(const Stmt& body) {
    ExecOutcome out;
    try {
      run_stmt(body);
      out.outcome = Outcome::Terminated;
      record(TraceKind::Termination);
      out.final_state = state_;
    } catch (const BudgetExhausted&) {
      out.outcome = Outcome::BudgetExhausted;
    } catch (const EvalError& e) {
      out.outcome = Outcome::RuntimeError;
      out.error = e.what();
    }
    out.trace = std::move(trace_);
    out.steps = steps_;
    return out;
  }

 private:
  void tick() {
    if (steps_ >= budget_) throw BudgetExhausted{};
    ++steps_;
  }

  void record(TraceKind kind, int loop_id = -1, std::uint64_t iteration = 0,
              std::uint64_t entry = 0, std::string target = {}, bool taken = false) {
    TraceEvent ev;
    ev.kind = kind;
    ev.loop_id = loop_id;
    ev.iteration = iteration;
    ev.entry = entry;
    ev.target = std::move(target);
    ev.branch_taken = taken;
    ev.vars = state_.vars;
    trace_.push_back(std::move(ev));
  }

  int loop_id_of(const Stmt& s) const {
    for (std::size_t i = 0; i < loops_.size(); ++i)
      if (loops_[i] == &s) return static_cast<int>(i);
    return -1;
  }

  void run_stmt(const Stmt& s) {
    switch (s.kind) {
      case StmtKind::Skip:
        tick();
        break;
      case StmtKind::Assign: {
        tick();
        Value v = lang::eval_expr(*s.expr, state_.vars, state_.funcs);
        state_.vars[s.target] = std::move(v);
        record(TraceKind::Assignment, -1, 0, 0, s.target);
        break;
      }
      case StmtKind::VecAssign: {
        tick();
        Value idx = lang::eval_expr(*s.index, state_.vars, state_.funcs);
        Value rhs = lang::eval_expr(*s.expr, state_.vars, state_.funcs);
        auto it = state_.vars.find(s.target);
        if (it == state_.vars.end() || !it->second.is_vec())
          throw EvalError("'" + s.target + "' is not a vector");
        double di = idx.as_double();
        if (di < 0 || di != std::floor(di))
          throw EvalError("vector index must be a nonnegative integer");
        auto i = static_cast<std::size_t>(di);
        if (i >= it->second.vec.size()) throw EvalError("vector index out of range");
        it->second.vec[i] = rhs.as_double();
        record(TraceKind::Assignment, -1, 0, 0, s.target);
        break;
      }
      case StmtKind::Seq:
        for (const auto& k : s.seq) run_stmt(*k);
        break;
      case StmtKind::If: {
        tick();
        bool taken = lang::eval_cond(*s.cond, state_.vars, state_.funcs);
        record(TraceKind::Branch, -1, 0, 0, {}, taken);
        run_stmt(taken ? *s.then_branch : *s.else_branch);
        break;
      }
      case StmtKind::While: {
        int id = loop_id_of(s);
        std::uint64_t entry = ++entries_[id];
        for (;;) {
          record(TraceKind::LoopHead, id, iterations_[id]++, entry);
          tick();  // guard evaluation
          if (!lang::eval_cond(*s.cond, state_.vars, state_.funcs)) break;
          run_stmt(*s.body);
        }
        break;
      }
    }
  }

  ProgState state_;
  std::uint64_t budget_;
  std::uint64_t steps_ = 0;
  std::vector<TraceEvent> trace_;
  std::vector<const Stmt*> loops_;
  std::map<int, std::uint64_t> iterations_;
  std::map<int, std::uint64_t> entries_;
};

}  // namespace

ExecOutcome run(const Program& p, const std::vector<ArgBinding>& args, std::uint64_t budget) {
  ExecOutcome out;
  ProgState st;
  try {
    st = bind_args(p, args);
  } catch (const EvalError& e) {
    out.outcome = Outcome::RuntimeError;
    out.error = e.what();
    return out;
  }
  Machine m(p, std::move(st), budget);
  return m.exec(*p.body);
}

ExecOutcome run_bounded_deterministic(const Program& p, const std::vector<ArgBinding>& args,
                                      std::uint64_t budget) {
  return run(p, args, budget);
}

std::string trace_to_text(const std::vector<TraceEvent>& trace) {
  std::ostringstream os;
  for (const auto& ev : trace) {
    const char* kind = ev.kind == TraceKind::LoopHead     ? "loop-head"
                       : ev.kind == TraceKind::Assignment ? "assignment"
                       : ev.kind == TraceKind::Branch     ? "branch"
                                                          : "termination";
    os << "kind=" << kind;
    if (ev.kind == TraceKind::LoopHead)
      os << " loop=" << ev.loop_id << " iter=" << ev.iteration;
    if (ev.kind == TraceKind::Assignment) os << " target=" << ev.target;
    if (ev.kind == TraceKind::Branch) os << " taken=" << (ev.branch_taken ? 1 : 0);
    os << " vars={";
    bool first = true;
    for (const auto& [name, value] : ev.vars) {
      if (!first) os << ", ";
      os << name << "=" << lang::to_text(value);
      first = false;
    }
    os << "}\n";
  }
  return os.str();
}

}  // namespace certinum::interp
