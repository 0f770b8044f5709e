#include "netconv/outcome_store.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "netconv/hash.hpp"
#include "netconv/serialize.hpp"

namespace netconv {

namespace fs = std::filesystem;

std::string outcome_digest(const ConvergedOutcome& o) {
  Json log;
  log["scc"] = o.scc;
  log["failures"] = o.failures;
  auto full = to_json(o);
  log["dependencies"] = full["dependencies"];
  log["choices"] = full["choices"];
  Hasher128 h;
  h.add(log.dump());
  return h.finish().hex();
}

std::string store_outcome(const ConvergedOutcome& o, const fs::path& root) {
  auto id = outcome_digest(o);
  auto dir = root / std::to_string(o.scc);
  fs::create_directories(dir);
  auto file = dir / (id + ".json");
  if (fs::exists(file)) return id;
  auto tmp = dir / (id + ".json.tmp");
  {
    std::ofstream out(tmp);
    out << to_json(o).dump(1) << '\n';
    if (!out) throw std::runtime_error("cannot write outcome " + tmp.string());
  }
  fs::rename(tmp, file);
  return id;
}

std::vector<ConvergedOutcome> load_matching_outcomes(std::size_t scc, const std::vector<LinkId>& failures,
                                                     const fs::path& root) {
  auto dir = root / std::to_string(scc);
  if (!fs::is_directory(dir)) throw std::runtime_error("no stored outcomes for group " + std::to_string(scc));
  std::vector<fs::path> files;
  for (const auto& ent : fs::directory_iterator(dir)) {
    if (ent.path().extension() == ".json") files.push_back(ent.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<ConvergedOutcome> out;
  for (const auto& f : files) {
    std::ifstream in(f);
    auto j = Json::parse(in);
    if (j.at("failures").get<std::vector<LinkId>>() != failures) continue;
    out.push_back(outcome_from_json(j));
  }
  return out;
}

OutcomeStore::OutcomeStore(fs::path root) : root_(std::move(root)) { fs::create_directories(*root_); }

void OutcomeStore::open_group(std::size_t scc) {
  std::lock_guard lock(mu_);
  if (root_) {
    fs::create_directories(*root_ / std::to_string(scc));
  } else {
    memory_[scc];
  }
}

std::string OutcomeStore::put(const ConvergedOutcome& o) {
  if (root_) {
    std::lock_guard lock(mu_);
    auto id = outcome_digest(o);
    bool fresh = !fs::exists(*root_ / std::to_string(o.scc) / (id + ".json"));
    store_outcome(o, *root_);
    if (fresh) ++count_;
    return id;
  }
  auto id = outcome_digest(o);
  std::lock_guard lock(mu_);
  if (memory_[o.scc].emplace(id, o).second) ++count_;
  return id;
}

std::vector<ConvergedOutcome> OutcomeStore::matching(std::size_t scc, const std::vector<LinkId>& failures) const {
  if (root_) return load_matching_outcomes(scc, failures, *root_);
  std::lock_guard lock(mu_);
  auto it = memory_.find(scc);
  if (it == memory_.end()) throw std::runtime_error("no stored outcomes for group " + std::to_string(scc));
  std::vector<ConvergedOutcome> out;
  for (const auto& [id, o] : it->second) {
    if (o.failures == failures) out.push_back(o);
  }
  return out;
}

std::vector<ConvergedOutcome> OutcomeStore::all() const {
  std::vector<ConvergedOutcome> out;
  std::lock_guard lock(mu_);
  if (!root_) {
    for (const auto& [scc, records] : memory_) {
      for (const auto& [id, o] : records) out.push_back(o);
    }
    return out;
  }
  std::vector<std::pair<std::size_t, fs::path>> files;
  for (const auto& dir : fs::directory_iterator(*root_)) {
    if (!dir.is_directory()) continue;
    std::size_t scc = std::stoul(dir.path().filename().string());
    for (const auto& f : fs::directory_iterator(dir.path())) {
      if (f.path().extension() == ".json") files.emplace_back(scc, f.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const auto& [scc, f] : files) {
    std::ifstream in(f);
    out.push_back(outcome_from_json(Json::parse(in)));
  }
  return out;
}

std::size_t OutcomeStore::size() const {
  std::lock_guard lock(mu_);
  return count_;
}

}  // namespace netconv
