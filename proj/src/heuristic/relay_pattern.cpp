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

#include <mrta/heuristic.hpp>

#include <algorithm>
#include <numeric>

namespace mrta {

using Cell = RelayPattern::Cell;

int RelayPattern::first_fragment(std::size_t row) const
{
  const auto& r = rows[row];
  for (int c = 0; c < columns; ++c)
  {
    if (r[static_cast<std::size_t>(c)] == Cell::Fragment)
      return c;
  }
  return columns;
}

int RelayPattern::fragments_in_column(int column) const
{
  int n = 0;
  for (const auto& r : rows)
  {
    if (r[static_cast<std::size_t>(column)] == Cell::Fragment)
      ++n;
  }
  return n;
}

int RelayPattern::longest_run(std::size_t row) const
{
  int best = 0;
  int run = 0;
  for (const auto c : rows[row])
  {
    run = c == Cell::Fragment ? run + 1 : 0;
    best = std::max(best, run);
  }
  return best;
}

std::string RelayPattern::to_string() const
{
  std::string out;
  for (const auto& r : rows)
  {
    for (const auto c : r)
      out += c == Cell::Fragment ? 'F' : c == Cell::Recharge ? 'R' : '.';
    out += '\n';
  }
  return out;
}

RelayPattern build_relay_pattern(
  int fragments, int frequency, int compatible, int coalition, int recharge_span)
{
  if (fragments < 1 || frequency < 1 || coalition < 1 || recharge_span < 1)
    throw PatternError("relay pattern parameters must be positive");
  if (compatible < coalition)
    throw PatternError("fewer compatible robots than the coalition size");

  const int period = frequency + recharge_span;
  const auto width = static_cast<std::size_t>(fragments);

  // Full pattern: every row repeats the base row shifted left by its offset.
  // The first attempt shifts each row one column more than the row above.
  // When the fleet is much smaller or larger than the period that leaves
  // columns short, so offsets spread evenly over the period are tried next.
  auto fill = [&](auto offset)
  {
    std::vector<std::vector<Cell>> grid(
      static_cast<std::size_t>(compatible), std::vector<Cell>(width));
    for (int i = 0; i < compatible; ++i)
    {
      for (int j = 0; j < fragments; ++j)
      {
        grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          (j + offset(i)) % period < frequency ? Cell::Fragment : Cell::Recharge;
      }
    }
    return grid;
  };
  auto short_column = [&](const std::vector<std::vector<Cell>>& grid)
  {
    for (std::size_t j = 0; j < width; ++j)
    {
      int n = 0;
      for (const auto& row : grid)
        n += row[j] == Cell::Fragment ? 1 : 0;
      if (n < coalition)
        return static_cast<int>(j);
    }
    return -1;
  };

  auto grid = fill([](int i) { return i; });
  if (short_column(grid) >= 0)
  {
    grid = fill([&](int i) { return (i * period) / compatible; });
    const int j = short_column(grid);
    if (j >= 0)
      throw PatternError("column " + std::to_string(j) + " cannot hold "
        + std::to_string(coalition) + " fragments");
  }

  // Column correction: surplus fragments become recharges, taken first from
  // cells next to a recharge, then from cells on the row boundary.
  for (std::size_t j = 0; j < width; ++j)
  {
    int surplus = -coalition;
    for (const auto& row : grid)
      surplus += row[j] == Cell::Fragment ? 1 : 0;
    while (surplus > 0)
    {
      std::size_t pick = grid.size();
      int pick_rank = 3;
      for (std::size_t i = 0; i < grid.size(); ++i)
      {
        const auto& row = grid[i];
        if (row[j] != Cell::Fragment)
          continue;
        const bool left_r = j > 0 && row[j - 1] == Cell::Recharge;
        const bool right_r = j + 1 < width && row[j + 1] == Cell::Recharge;
        const bool edge = j == 0 || j + 1 == width;
        const int rank = left_r || right_r ? 0 : edge ? 1 : 2;
        if (rank < pick_rank)
        {
          pick = i;
          pick_rank = rank;
        }
      }
      grid[pick][j] = Cell::Recharge;
      --surplus;
    }
  }

  // Reduction: recharges before the first or after the last fragment of a
  // row are dropped, and rows without fragments disappear.
  RelayPattern pattern;
  pattern.columns = fragments;
  for (auto& row : grid)
  {
    const auto first = std::find(row.begin(), row.end(), Cell::Fragment);
    if (first == row.end())
      continue;
    std::fill(row.begin(), first, Cell::Empty);
    const auto last = std::find(row.rbegin(), row.rend(), Cell::Fragment);
    std::fill(row.rbegin(), last, Cell::Empty);
    pattern.rows.push_back(std::move(row));
  }

  // Rows sorted by their first fragment.
  std::vector<std::size_t> order(pattern.rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b)
    { return pattern.first_fragment(a) < pattern.first_fragment(b); });
  std::vector<std::vector<Cell>> sorted;
  sorted.reserve(order.size());
  for (const auto i : order)
    sorted.push_back(std::move(pattern.rows[i]));
  pattern.rows = std::move(sorted);
  return pattern;
}

} // namespace mrta
