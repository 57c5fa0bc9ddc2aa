#include "lincost/corpus.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef LINCOST_CORPUS_DIR
#define LINCOST_CORPUS_DIR "corpus"
#endif

namespace lincost {

const std::vector<CorpusEntry>& realistic_corpus() {
  static const std::vector<CorpusEntry> entries = {
      {"cons", "cons.lc"},          {"uncons", "uncons.lc"},
      {"map", "map.lc"},            {"filter", "filter.lc"},
      {"zip", "zip.lc"},            {"unzip", "unzip.lc"},
      {"insert", "insert.lc"},      {"remove", "remove.lc"},
      {"insertion sort", "isort.lc"}, {"split", "split.lc"},
      {"merge", "merge.lc"},        {"merge sort", "msort.lc"},
  };
  return entries;
}

std::string corpus_dir() {
  const char* env = std::getenv("LINCOST_CORPUS_DIR");
  return env && *env ? env : LINCOST_CORPUS_DIR;
}

std::string corpus_source(const CorpusEntry& e, const std::string& dir) {
  std::string path = (dir.empty() ? corpus_dir() : dir) + "/" + e.file;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace lincost
