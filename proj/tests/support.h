// Copyright 2026 The Treegraph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Test helpers: fixture loading, random trees, and brute-force enumerators
// used as independent oracles.

#ifndef TREEGRAPH_TESTS_SUPPORT_H_
#define TREEGRAPH_TESTS_SUPPORT_H_

#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "treegraph/constituency.h"

namespace treegraph::testing {

inline std::string fixture(const std::string& name) {
  std::ifstream in(std::string(TREEGRAPH_FIXTURES) + "/" + name, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// Random phrase-structure tree with 1..max_terminals leaves. Leaves are
// words w0, w1, ... and, when traces is set, occasional "*-k" traces.
inline Tree random_tree(std::mt19937& rng, int max_terminals, bool traces) {
  std::uniform_int_distribution<int> count(1, max_terminals);
  int n = count(rng);
  std::vector<Tree> items;
  int word = 0, trace = 0;
  for (int i = 0; i < n; ++i) {
    if (traces && i > 0 && rng() % 5 == 0) {
      items.push_back(Tree::trace("*", std::to_string(++trace)));
    } else {
      items.push_back(Tree::word("w" + std::to_string(word++)));
    }
  }
  if (word == 0) items.front() = Tree::word("w0");
  static const char* kLabels[] = {"S", "NP", "VP", "PP", "X"};
  // Repeatedly wrap a random contiguous run (sometimes of length one, which
  // makes unary chains) until a single root remains.
  while (items.size() > 1 || items.front().is_terminal() || rng() % 3 == 0) {
    std::uniform_int_distribution<std::size_t> pos(0, items.size() - 1);
    std::size_t a = pos(rng), b = pos(rng);
    if (a > b) std::swap(a, b);
    if (rng() % 3 == 0) b = a;
    std::vector<Tree> run(items.begin() + a, items.begin() + b + 1);
    Tree node = Tree::phrase(kLabels[rng() % 5], std::move(run));
    items.erase(items.begin() + a, items.begin() + b + 1);
    items.insert(items.begin() + a, std::move(node));
    if (items.size() == 1 && !items.front().is_terminal() && rng() % 2 == 0) break;
  }
  return items.front();
}

// Every ordered tree with exactly n nodes; internal nodes are labeled by
// preorder index ("N0", "N1", ...) and leaves are words "w0", "w1", ...
inline std::vector<Tree> all_shapes(int n) {
  // Forests of k nodes as lists of child-count-annotated skeletons.
  std::function<std::vector<std::vector<Tree>>(int)> forests;
  std::function<std::vector<Tree>(int)> trees = [&](int k) {
    std::vector<Tree> out;
    if (k == 1) {
      out.push_back(Tree::word(""));
      return out;
    }
    for (auto& f : forests(k - 1)) out.push_back(Tree::phrase("", std::move(f)));
    return out;
  };
  forests = [&](int k) {
    std::vector<std::vector<Tree>> out;
    for (int first = 1; first <= k; ++first) {
      for (Tree& t : trees(first)) {
        if (first == k) {
          out.push_back({t});
          continue;
        }
        for (auto& rest : forests(k - first)) {
          std::vector<Tree> f{t};
          f.insert(f.end(), rest.begin(), rest.end());
          out.push_back(std::move(f));
        }
      }
    }
    return out;
  };
  std::vector<Tree> shapes = trees(n);
  for (Tree& t : shapes) {
    int label = 0, word = 0;
    std::function<void(Tree&)> name = [&](Tree& x) {
      if (x.is_terminal()) {
        x.fields.set(kForm, "w" + std::to_string(word++));
        return;
      }
      x.fields.set(kLabel, "N" + std::to_string(label++));
      for (Tree& c : x.children) name(c);
    };
    name(t);
  }
  return shapes;
}

// Bracket strings of every tree over leaves w0..w{leaves-1} (in order) whose
// internal nodes are unlabeled and number between 1 and max_internal, with
// an internal root.
inline std::set<std::string> all_bracketings(int leaves, int max_internal) {
  using Key = std::tuple<int, int, int>;
  std::map<Key, std::vector<std::string>> tree_memo, forest_memo;
  std::function<const std::vector<std::string>&(int, int, int)> forests;
  std::function<const std::vector<std::string>&(int, int, int)> trees =
      [&](int i, int j, int b) -> const std::vector<std::string>& {
    Key key{i, j, b};
    if (auto it = tree_memo.find(key); it != tree_memo.end()) return it->second;
    std::vector<std::string> out;
    if (b == 0) {
      if (j == i + 1) out.push_back("w" + std::to_string(i));
    } else {
      for (const std::string& f : forests(i, j, b - 1)) out.push_back("(\xE2\x80\xA2 " + f + ")");
    }
    return tree_memo[key] = std::move(out);
  };
  forests = [&](int i, int j, int b) -> const std::vector<std::string>& {
    Key key{i, j, b};
    if (auto it = forest_memo.find(key); it != forest_memo.end()) return it->second;
    std::vector<std::string> out;
    for (int k = i + 1; k <= j; ++k) {
      for (int b1 = 0; b1 <= b; ++b1) {
        for (const std::string& t : trees(i, k, b1)) {
          if (k == j) {
            if (b1 == b) out.push_back(t);
            continue;
          }
          for (const std::string& rest : forests(k, j, b - b1)) out.push_back(t + " " + rest);
        }
      }
    }
    return forest_memo[key] = std::move(out);
  };
  std::set<std::string> all;
  for (int b = 1; b <= max_internal; ++b) {
    for (const std::string& t : trees(0, leaves, b)) all.insert(t);
  }
  return all;
}

// Every parent function over n words (0 = root, k = word k) that forms a
// tree rooted at 0.
inline std::set<std::vector<int>> all_dependency_trees(int n) {
  std::set<std::vector<int>> out;
  std::vector<int> parent(n, 0);
  std::function<void(int)> fill = [&](int i) {
    if (i == n) {
      for (int w = 1; w <= n; ++w) {
        int x = w, steps = 0;
        while (x != 0 && steps++ <= n) x = parent[x - 1];
        if (x != 0) return;
      }
      out.insert(parent);
      return;
    }
    for (int p = 0; p <= n; ++p) {
      if (p == i + 1) continue;
      parent[i] = p;
      fill(i + 1);
    }
  };
  fill(0);
  return out;
}

}  // namespace treegraph::testing

#endif  // TREEGRAPH_TESTS_SUPPORT_H_
