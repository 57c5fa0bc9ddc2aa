#pragma once

#include <string>
#include <vector>

namespace lincost {

struct CorpusEntry {
  std::string name;  // table name, e.g. "insertion sort"
  std::string file;  // basename under the corpus directory
};

// The twelve bundled list functions: cons, uncons, map, filter, zip,
// unzip, insert, remove, insertion sort, split, merge, merge sort.
const std::vector<CorpusEntry>& realistic_corpus();

// Loads one corpus source. `dir` defaults to the compiled-in corpus path;
// the LINCOST_CORPUS_DIR environment variable overrides it.
std::string corpus_source(const CorpusEntry& e, const std::string& dir = "");
std::string corpus_dir();

}  // namespace lincost
