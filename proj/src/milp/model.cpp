/*
 * Copyright (C) 2026 The mrta-planner Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
*/

#include <mrta/milp.hpp>

#include <mrta/geometry.hpp>
#include <mrta/objective.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace mrta::milp {

using Role = Meaning::Role;

std::size_t Instance::find(const std::string& name) const
{
  const auto it = index.find(name);
  if (it == index.end())
    throw std::out_of_range("unknown variable " + name);
  return it->second;
}

std::string to_string(Category c)
{
  switch (c)
  {
    case Category::Basic:
      return "basic";
    case Category::Time:
      return "time";
    case Category::Coordination:
      return "coordination";
  }
  return "?";
}

double SizeReport::linearization_variable_share() const
{
  return variables == 0 ? 0.0 : 100.0 * static_cast<double>(linearization_variables)
      / static_cast<double>(variables);
}

double SizeReport::linearization_constraint_share() const
{
  return constraints == 0 ? 0.0 : 100.0 * static_cast<double>(linearization_constraints)
      / static_cast<double>(constraints);
}

SizeReport size_report(const Instance& instance)
{
  SizeReport r;
  r.variables = instance.variables.size();
  r.constraints = instance.constraints.size();
  for (const auto& v : instance.variables)
  {
    ++r.variables_by_category[v.category];
    r.linearization_variables += v.linearization ? 1 : 0;
    if (v.kind == VarKind::Real)
      ++r.real_variables;
    else
      ++r.integer_variables;
  }
  for (const auto& c : instance.constraints)
  {
    ++r.constraints_by_category[c.category];
    r.linearization_constraints += c.linearization ? 1 : 0;
  }
  return r;
}

namespace {

std::string slot_tag(int r, int s)
{
  return "r" + std::to_string(r) + "_s" + std::to_string(s);
}

class Builder
{
public:
  explicit Builder(const Scenario& scenario)
  {
    inst_.scenario = scenario;
    n_ = static_cast<int>(scenario.robots.size());
    m_ = static_cast<int>(scenario.tasks.size());
    S_ = std::max(1, scenario.slots_per_robot);
    F_ = std::max(1, scenario.max_fragments);
    inst_.slots = S_;
    inst_.max_fragments = F_;
    const auto eta = normalizers(scenario);
    eta_ = eta;
    inst_.time_bound = eta.eta1 * S_;
  }

  Instance build()
  {
    check_inputs();
    declare_basic();
    declare_time();
    add_slot_constraints();
    add_counting();
    add_time_recursion();
    add_battery();
    add_synchronization();
    add_relays();
    add_objective_terms();
    return std::move(inst_);
  }

private:
  const Scenario& sc() const { return inst_.scenario; }

  std::size_t var(std::string name, VarKind kind, double lo, double hi,
    Category cat, bool lin, Meaning meaning)
  {
    const auto id = inst_.variables.size();
    inst_.index.emplace(name, id);
    inst_.variables.push_back({std::move(name), kind, lo, hi, cat, lin, meaning});
    return id;
  }

  void con(std::string name, std::vector<Term> terms, Sense sense, double rhs,
    Category cat, bool lin = false)
  {
    inst_.constraints.push_back({std::move(name), std::move(terms), sense, rhs, cat, lin});
  }

  // b' = b1 * b2 for binaries.
  std::size_t product_bb(std::size_t b1, std::size_t b2, const std::string& name,
    Category cat)
  {
    const auto p = var(name, VarKind::Binary, 0.0, 1.0, cat, true, {});
    con(name + "_a", {{p, 1.0}, {b1, -1.0}}, Sense::LessEqual, 0.0, cat, true);
    con(name + "_b", {{p, 1.0}, {b2, -1.0}}, Sense::LessEqual, 0.0, cat, true);
    con(name + "_c", {{p, 1.0}, {b1, -1.0}, {b2, -1.0}}, Sense::GreaterEqual, -1.0, cat,
      true);
    return p;
  }

  // r' = b * r for a binary b and a bounded real (or integer) r.
  std::size_t product_br(std::size_t b, std::size_t r, const std::string& name,
    Category cat)
  {
    const double lo = inst_.variables[r].lower;
    const double hi = inst_.variables[r].upper;
    const auto p = var(name, VarKind::Real, std::min(0.0, lo), hi, cat, true, {});
    // b*lo <= r'  and  r' <= b*hi
    con(name + "_a", {{p, 1.0}, {b, -lo}}, Sense::GreaterEqual, 0.0, cat, true);
    con(name + "_b", {{p, 1.0}, {b, -hi}}, Sense::LessEqual, 0.0, cat, true);
    // r - hi*(1-b) <= r'  and  r - lo*(1-b) >= r'
    con(name + "_c", {{p, 1.0}, {r, -1.0}, {b, -hi}}, Sense::GreaterEqual, -hi, cat, true);
    con(name + "_d", {{p, 1.0}, {r, -1.0}, {b, -lo}}, Sense::LessEqual, -lo, cat, true);
    return p;
  }

  Position location(int t) const
  {
    return t == m_ ? sc().stations.front() : sc().tasks[static_cast<std::size_t>(t)].location;
  }

  void check_inputs()
  {
    if (sc().stations.empty())
      throw ConfigError("scenario has no recharge station");
    if (sc().stations.size() > 1)
      inst_.warnings.push_back(
        "several stations: recharges are modelled at the first station only");
    for (const auto& t : sc().tasks)
    {
      if (compatible_count(sc(), t) == 0)
        inst_.warnings.push_back("task " + std::to_string(t.id.value)
          + " has no compatible robot; the model is infeasible");
    }
  }

  void declare_basic()
  {
    x_.assign(static_cast<std::size_t>(n_ * (m_ + 1) * S_), 0);
    for (int r = 0; r < n_; ++r)
    {
      for (int t = 0; t <= m_; ++t)
      {
        for (int s = 1; s <= S_; ++s)
        {
          const std::string tt = t == m_ ? "R" : "t" + std::to_string(t);
          x(r, t, s) = var("x_r" + std::to_string(r) + "_" + tt + "_s" + std::to_string(s),
            VarKind::Binary, 0.0, 1.0, Category::Basic, false,
            {Role::Assign, r, t, s});
        }
      }
    }
    for (int t = 0; t < m_; ++t)
    {
      const auto ts = std::to_string(t);
      const auto& task = sc().tasks[static_cast<std::size_t>(t)];
      nf_.push_back(var("nf_t" + ts, VarKind::Integer, 1.0, F_, Category::Basic, false,
        {Role::Fragments, -1, t}));
      n_t_.push_back(var("n_t" + ts, VarKind::Integer, 0.0, n_ * S_, Category::Basic, false,
        {Role::Appearances, -1, t}));
      nq_.push_back(var("nq_t" + ts, VarKind::Integer, 0.0, n_, Category::Basic, false,
        {Role::Queues, -1, t}));
      nr_.push_back(var("nr_t" + ts, VarKind::Integer, 0.0, std::max(1, n_),
        Category::Basic, false, {Role::Coalition, -1, t}));
      std::vector<std::size_t> flags;
      for (int k = 1; k <= F_; ++k)
      {
        flags.push_back(var("nfk_t" + ts + "_k" + std::to_string(k), VarKind::Binary, 0.0,
          1.0, Category::Basic, true, {Role::FragmentFlag, -1, t, -1, -1, -1, k}));
      }
      nf_flag_.push_back(flags);
      std::vector<std::size_t> q;
      for (int r = 0; r < n_; ++r)
      {
        q.push_back(var("nq_r" + std::to_string(r) + "_t" + ts, VarKind::Binary, 0.0, 1.0,
          Category::Basic, false, {Role::InQueue, r, t}));
      }
      nqr_.push_back(q);
      const int N = task.coalition.required_size();
      dev_.push_back(N > 0
        ? static_cast<long>(var("V_t" + ts, VarKind::Real, 0.0, N, Category::Basic, false,
            {Role::Deviation, -1, t}))
        : -1);
    }
    z_var_ = var("Z", VarKind::Real, 0.0, inst_.time_bound, Category::Time, false,
      {Role::Makespan});
  }

  void declare_time()
  {
    const double T = inst_.time_bound;
    double bmax = 0.0;
    for (const auto& r : sc().robots)
      bmax = std::max(bmax, r.battery_max);
    for (int r = 0; r < n_; ++r)
    {
      SlotVars row;
      for (int s = 1; s <= S_; ++s)
      {
        const auto tag = slot_tag(r, s);
        SlotVars::Entry e;
        e.wait = var("Tw_" + tag, VarKind::Real, 0.0, T, Category::Time, false,
          {Role::Wait, r, -1, s});
        e.travel = var("Td_" + tag, VarKind::Real, 0.0, T, Category::Time, false,
          {Role::Travel, r, -1, s});
        e.exec = var("Te_" + tag, VarKind::Real, 0.0, T, Category::Time, false,
          {Role::Exec, r, -1, s});
        e.finish = var("Tf_" + tag, VarKind::Real, 0.0, T, Category::Time, false,
          {Role::Finish, r, -1, s});
        e.battery = var("B_" + tag, VarKind::Real, 0.0, bmax, Category::Time, false,
          {Role::Battery, r, -1, s});
        e.delay = var("dT_" + tag, VarKind::Real, 0.0, T, Category::Time, false,
          {Role::Delay, r, -1, s});
        row.slots.push_back(e);
      }
      time_.push_back(row);
    }
  }

  // Slot occupancy, recharge alternation, queue continuity and hardware.
  void add_slot_constraints()
  {
    for (int r = 0; r < n_; ++r)
    {
      const auto& robot = sc().robots[static_cast<std::size_t>(r)];
      for (int s = 1; s <= S_; ++s)
      {
        const auto tag = slot_tag(r, s);
        std::vector<Term> one;
        for (int t = 0; t <= m_; ++t)
          one.push_back({x(r, t, s), 1.0});
        con("one_" + tag, one, Sense::LessEqual, 1.0, Category::Basic);
        if (s > 1)
        {
          con("norr_" + tag, {{x(r, m_, s - 1), 1.0}, {x(r, m_, s), 1.0}}, Sense::LessEqual,
            1.0, Category::Basic);
          std::vector<Term> cont;
          for (int t = 0; t <= m_; ++t)
          {
            cont.push_back({x(r, t, s), 1.0});
            cont.push_back({x(r, t, s - 1), -1.0});
          }
          con("cont_" + tag, cont, Sense::LessEqual, 0.0, Category::Basic);
        }
        for (int t = 0; t < m_; ++t)
        {
          const double h = compatible(robot, sc().tasks[static_cast<std::size_t>(t)]) ? 1.0 : 0.0;
          con("hw_" + tag + "_t" + std::to_string(t), {{x(r, t, s), 1.0}}, Sense::LessEqual, h,
            Category::Basic);
        }
      }
    }
  }

  // Appearance, queue and coalition counters.
  void add_counting()
  {
    for (int t = 0; t < m_; ++t)
    {
      const auto ts = "_t" + std::to_string(t);
      const auto ut = static_cast<std::size_t>(t);
      const auto& task = sc().tasks[ut];

      std::vector<Term> count{{n_t_[ut], 1.0}};
      for (int r = 0; r < n_; ++r)
        for (int s = 1; s <= S_; ++s)
          count.push_back({x(r, t, s), -1.0});
      con("cnt_n" + ts, count, Sense::Equal, 0.0, Category::Basic);

      std::vector<Term> queues{{nq_[ut], 1.0}};
      for (int r = 0; r < n_; ++r)
      {
        const auto q = nqr_[ut][static_cast<std::size_t>(r)];
        queues.push_back({q, -1.0});
        // n^q[r,t] is 1 exactly when task t appears in robot r's queue.
        std::vector<Term> upper{{q, 1.0}};
        for (int s = 1; s <= S_; ++s)
        {
          upper.push_back({x(r, t, s), -1.0});
          con("nqlo_r" + std::to_string(r) + ts + "_s" + std::to_string(s),
            {{q, 1.0}, {x(r, t, s), -1.0}}, Sense::GreaterEqual, 0.0, Category::Basic);
        }
        con("nqhi_r" + std::to_string(r) + ts, upper, Sense::LessEqual, 0.0, Category::Basic);
      }
      con("cnt_nq" + ts, queues, Sense::Equal, 0.0, Category::Basic);
      con("cnt_nr" + ts, {{nr_[ut], 1.0}, {nq_[ut], -1.0}}, Sense::LessEqual, 0.0,
        Category::Basic);
      con("cnt_nrmin" + ts, {{nr_[ut], 1.0}}, Sense::GreaterEqual, 1.0, Category::Basic);

      // One-hot encoding of n^f_t, used to linearize 1/n^f_t and n^r_t * n^f_t.
      std::vector<Term> onehot;
      std::vector<Term> value{{nf_[ut], 1.0}};
      std::vector<Term> product{{n_t_[ut], 1.0}};
      for (int k = 1; k <= F_; ++k)
      {
        const auto flag = nf_flag_[ut][static_cast<std::size_t>(k - 1)];
        onehot.push_back({flag, 1.0});
        value.push_back({flag, -static_cast<double>(k)});
        const auto g = product_br(flag, nr_[ut], "g" + ts + "_k" + std::to_string(k),
          Category::Basic);
        product.push_back({g, -static_cast<double>(k)});
      }
      con("nfone" + ts, onehot, Sense::Equal, 1.0, Category::Basic, true);
      con("nfval" + ts, value, Sense::Equal, 0.0, Category::Basic, true);
      con("cnt_prod" + ts, product, Sense::Equal, 0.0, Category::Basic);

      if (task.decomposability == Decomposability::NonDecomposable)
        con("nondec" + ts, {{nf_[ut], 1.0}}, Sense::Equal, 1.0, Category::Basic);

      // Coalition-size deviation.
      const int N = task.coalition.required_size();
      if (N > 0)
      {
        const auto v = static_cast<std::size_t>(dev_[ut]);
        con("dev" + ts, {{v, 1.0}, {nr_[ut], 1.0}}, Sense::Equal, N, Category::Basic);
        if (task.coalition.kind == CoalitionFlexibility::Kind::Fixed)
          con("fixed" + ts, {{v, 1.0}}, Sense::Equal, 0.0, Category::Basic);
      }
    }
  }

  // Travel, execution and finish-time recursion, makespan and delays.
  void add_time_recursion()
  {
    for (int r = 0; r < n_; ++r)
    {
      const auto& robot = sc().robots[static_cast<std::size_t>(r)];
      for (int s = 1; s <= S_; ++s)
      {
        const auto tag = slot_tag(r, s);
        const auto& e = slot(r, s);

        std::vector<Term> travel{{e.travel, 1.0}};
        for (int t2 = 0; t2 <= m_; ++t2)
        {
          if (s == 1)
          {
            const double d = travel_time(robot, robot.start, location(t2));
            travel.push_back({x(r, t2, s), -d});
            continue;
          }
          for (int t1 = 0; t1 <= m_; ++t1)
          {
            const double d = travel_time(robot, location(t1), location(t2));
            const auto w = product_bb(x(r, t1, s - 1), x(r, t2, s),
              "w_" + tag + "_" + std::to_string(t1) + "_" + std::to_string(t2),
              Category::Time);
            travel.push_back({w, -d});
          }
        }
        con("Td_" + tag, travel, Sense::Equal, 0.0, Category::Time);

        std::vector<Term> exec{{e.exec, 1.0}, {x(r, m_, s), -sc().recharge_time}};
        for (int t = 0; t < m_; ++t)
        {
          const double te = sc().tasks[static_cast<std::size_t>(t)].exec_time;
          for (int k = 1; k <= F_; ++k)
          {
            const auto p = product_bb(x(r, t, s),
              nf_flag_[static_cast<std::size_t>(t)][static_cast<std::size_t>(k - 1)],
              "e_" + tag + "_t" + std::to_string(t) + "_k" + std::to_string(k),
              Category::Time);
            exec.push_back({p, -te / k});
          }
        }
        con("Te_" + tag, exec, Sense::Equal, 0.0, Category::Time);

        std::vector<Term> finish{{e.finish, 1.0}, {e.travel, -1.0}, {e.wait, -1.0},
          {e.exec, -1.0}};
        double rhs = robot.ready_time;
        if (s > 1)
        {
          finish.push_back({slot(r, s - 1).finish, -1.0});
          rhs = 0.0;
        }
        con("Tf_" + tag, finish, Sense::Equal, rhs, Category::Time);

        // Makespan bound on the last slot, deadline delay on every slot.
        if (s == S_)
          con("mk_r" + std::to_string(r), {{z_var_, 1.0}, {e.finish, -1.0}},
            Sense::GreaterEqual, 0.0, Category::Time);
        std::vector<Term> delay{{e.delay, 1.0}};
        double delay_rhs = 0.0;
        for (int t = 0; t < m_; ++t)
        {
          const auto p = product_br(x(r, t, s), e.finish,
            "p_" + tag + "_t" + std::to_string(t), Category::Time);
          delay.push_back({p, -1.0});
          delay.push_back({x(r, t, s), sc().tasks[static_cast<std::size_t>(t)].deadline});
        }
        con("dl_" + tag, delay, Sense::GreaterEqual, delay_rhs, Category::Time);
      }
    }
  }

  // Battery recursion; a recharge resets the counter.
  void add_battery()
  {
    for (int r = 0; r < n_; ++r)
    {
      const auto& robot = sc().robots[static_cast<std::size_t>(r)];
      for (int s = 1; s <= S_; ++s)
      {
        const auto tag = slot_tag(r, s);
        const auto& e = slot(r, s);
        const auto recharge = x(r, m_, s);
        const auto ww = product_br(recharge, e.wait, "bw_" + tag, Category::Time);
        const auto ee = product_br(recharge, e.exec, "be_" + tag, Category::Time);
        std::vector<Term> terms{{e.battery, 1.0}, {e.travel, -1.0}, {e.wait, -1.0},
          {ww, 1.0}, {e.exec, -1.0}, {ee, 1.0}};
        double rhs = 0.0;
        if (s == 1)
        {
          rhs = robot.battery_initial;
        }
        else
        {
          const auto& prev = slot(r, s - 1);
          const auto bb =
            product_br(x(r, m_, s - 1), prev.battery, "bb_" + tag, Category::Time);
          terms.push_back({prev.battery, -1.0});
          terms.push_back({bb, 1.0});
        }
        con("B_" + tag, terms, Sense::Equal, rhs, Category::Time);
        con("Bmax_" + tag, {{e.battery, 1.0}}, Sense::LessEqual, robot.battery_budget(),
          Category::Time);
      }
    }
  }

  // Synchronized coalitions: paired slots finish together and each slot has
  // exactly n^r - 1 partners.
  void add_synchronization()
  {
    for (int t = 0; t < m_; ++t)
    {
      const auto ut = static_cast<std::size_t>(t);
      const auto ts = "t" + std::to_string(t);
      std::map<std::tuple<int, int, int, int>, std::size_t> y;
      for (int r1 = 0; r1 < n_; ++r1)
        for (int s1 = 1; s1 <= S_; ++s1)
          for (int r2 = 0; r2 < n_; ++r2)
          {
            if (r1 == r2)
              continue;
            for (int s2 = 1; s2 <= S_; ++s2)
            {
              const auto name = "y_" + ts + "_" + slot_tag(r1, s1) + "_" + slot_tag(r2, s2);
              const auto v = var(name, VarKind::Binary, 0.0, 1.0, Category::Coordination,
                false, {Role::Synch, r1, t, s1, r2, s2});
              y[{r1, s1, r2, s2}] = v;
              con(name + "_x1", {{v, 1.0}, {x(r1, t, s1), -1.0}}, Sense::LessEqual, 0.0,
                Category::Coordination);
              con(name + "_x2", {{v, 1.0}, {x(r2, t, s2), -1.0}}, Sense::LessEqual, 0.0,
                Category::Coordination);
              const auto a1 =
                product_br(v, slot(r1, s1).finish, name + "_f1", Category::Coordination);
              const auto a2 =
                product_br(v, slot(r2, s2).finish, name + "_f2", Category::Coordination);
              con(name + "_sync", {{a1, 1.0}, {a2, -1.0}}, Sense::Equal, 0.0,
                Category::Coordination);
            }
          }
      for (const auto& [key, v] : y)
      {
        const auto [r1, s1, r2, s2] = key;
        if (std::make_pair(r1, s1) < std::make_pair(r2, s2))
          con("ysym_" + inst_.variables[v].name, {{v, 1.0}, {y.at({r2, s2, r1, s1}), -1.0}},
            Sense::Equal, 0.0, Category::Coordination);
      }
      for (int r1 = 0; r1 < n_; ++r1)
        for (int s1 = 1; s1 <= S_; ++s1)
        {
          const auto tag = slot_tag(r1, s1);
          const auto h = product_br(x(r1, t, s1), nr_[ut], "h_" + ts + "_" + tag,
            Category::Coordination);
          std::vector<Term> group{{h, 1.0}, {x(r1, t, s1), -1.0}};
          for (int r2 = 0; r2 < n_; ++r2)
          {
            if (r2 == r1)
              continue;
            for (int s2 = 1; s2 <= S_; ++s2)
              group.push_back({y.at({r1, s1, r2, s2}), -1.0});
          }
          con("ygrp_" + ts + "_" + tag, group, Sense::Equal, 0.0, Category::Coordination);
        }
    }
  }

  // Relays: the successor starts when the predecessor finishes and each slot
  // relays at most once in each direction. Only relayable tasks get relay
  // variables.
  void add_relays()
  {
    for (int t = 0; t < m_; ++t)
    {
      const auto ut = static_cast<std::size_t>(t);
      if (sc().tasks[ut].decomposability != Decomposability::Relayable)
        continue;
      const auto ts = "t" + std::to_string(t);
      std::map<std::pair<int, int>, std::vector<Term>> out;
      std::map<std::pair<int, int>, std::vector<Term>> in;
      std::vector<Term> total{{n_t_[ut], 1.0}, {nr_[ut], -1.0}};
      for (int r1 = 0; r1 < n_; ++r1)
        for (int s1 = 1; s1 <= S_; ++s1)
          for (int r2 = 0; r2 < n_; ++r2)
            for (int s2 = 1; s2 <= S_; ++s2)
            {
              if (r1 == r2 && s1 == s2)
                continue;
              const auto name = "z_" + ts + "_" + slot_tag(r1, s1) + "_" + slot_tag(r2, s2);
              const auto v = var(name, VarKind::Binary, 0.0, 1.0, Category::Coordination,
                false, {Role::Relay, r1, t, s1, r2, s2});
              con(name + "_x1", {{v, 1.0}, {x(r1, t, s1), -1.0}}, Sense::LessEqual, 0.0,
                Category::Coordination);
              con(name + "_x2", {{v, 1.0}, {x(r2, t, s2), -1.0}}, Sense::LessEqual, 0.0,
                Category::Coordination);
              const auto a1 =
                product_br(v, slot(r1, s1).finish, name + "_f1", Category::Coordination);
              const auto a2 =
                product_br(v, slot(r2, s2).finish, name + "_f2", Category::Coordination);
              const auto a3 =
                product_br(v, slot(r2, s2).exec, name + "_e2", Category::Coordination);
              con(name + "_relay", {{a1, 1.0}, {a2, -1.0}, {a3, 1.0}}, Sense::Equal, 0.0,
                Category::Coordination);
              out[{r1, s1}].push_back({v, 1.0});
              in[{r2, s2}].push_back({v, 1.0});
              total.push_back({v, -1.0});
            }
      for (const auto& [key, terms] : out)
        con("zout_" + ts + "_" + slot_tag(key.first, key.second), terms, Sense::LessEqual,
          1.0, Category::Coordination);
      for (const auto& [key, terms] : in)
        con("zin_" + ts + "_" + slot_tag(key.first, key.second), terms, Sense::LessEqual,
          1.0, Category::Coordination);
      con("ztot_" + ts, total, Sense::Equal, 0.0, Category::Coordination);
    }
  }

  // Normalized weighted objective.
  void add_objective_terms()
  {
    auto& obj = inst_.objective;
    obj.push_back({z_var_, 1.0 / eta_.eta1});
    for (int r = 0; r < n_; ++r)
      for (int s = 1; s <= S_; ++s)
      {
        obj.push_back({slot(r, s).delay, 1.0 / eta_.eta2});
        obj.push_back({slot(r, s).wait, 1.0 / eta_.eta3});
      }
    for (const auto d : dev_)
    {
      if (d >= 0)
        obj.push_back({static_cast<std::size_t>(d), 1.0 / eta_.eta4});
    }
  }

  struct SlotVars
  {
    struct Entry
    {
      std::size_t wait, travel, exec, finish, battery, delay;
    };
    std::vector<Entry> slots;
  };

  std::size_t& x(int r, int t, int s)
  {
    return x_[static_cast<std::size_t>((r * (m_ + 1) + t) * S_ + (s - 1))];
  }
  const SlotVars::Entry& slot(int r, int s) const
  {
    return time_[static_cast<std::size_t>(r)].slots[static_cast<std::size_t>(s - 1)];
  }

  Instance inst_;
  Normalizers eta_;
  int n_ = 0;
  int m_ = 0;
  int S_ = 1;
  int F_ = 1;
  std::vector<std::size_t> x_;
  std::vector<std::size_t> nf_, n_t_, nq_, nr_;
  std::vector<std::vector<std::size_t>> nf_flag_, nqr_;
  std::vector<long> dev_;
  std::size_t z_var_ = 0;
  std::vector<SlotVars> time_;
};

} // namespace

Instance build_instance(const Scenario& scenario)
{
  return Builder(scenario).build();
}

} // namespace mrta::milp
