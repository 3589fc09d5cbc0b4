#include "equitrot/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace equitrot {

using nlohmann::json;

std::vector<int> IntRange::values() const {
  std::vector<int> out;
  for (int r = first; r <= last; ++r) out.push_back(r);
  return out;
}

std::string trotter_input_name(TrotterCompareSpec::Input input) {
  switch (input) {
    case TrotterCompareSpec::Input::Singlet: return "singlet";
    case TrotterCompareSpec::Input::Neel: return "neel";
    case TrotterCompareSpec::Input::DomainWall: return "domain_wall";
  }
  return "unknown";
}

TrotterCompareSpec::Input parse_trotter_input(const std::string& name) {
  using I = TrotterCompareSpec::Input;
  for (I i : {I::Singlet, I::Neel, I::DomainWall}) {
    if (trotter_input_name(i) == name) return i;
  }
  throw std::invalid_argument("unknown trotter_compare.initial_state '" + name + "'");
}

StateVector trotter_input_state(TrotterCompareSpec::Input input, int n_qubits) {
  switch (input) {
    case TrotterCompareSpec::Input::Singlet: return singlet_initial_state(n_qubits);
    case TrotterCompareSpec::Input::Neel: return neel_state(n_qubits);
    case TrotterCompareSpec::Input::DomainWall: break;
  }
  return domain_wall_state(n_qubits);
}

std::string extrapolator_kind_name(ExtrapolatorSpec::Kind kind) {
  switch (kind) {
    case ExtrapolatorSpec::Kind::Dmd: return "dmd";
    case ExtrapolatorSpec::Kind::Polynomial: return "polynomial";
    case ExtrapolatorSpec::Kind::Exponential: return "exponential";
    case ExtrapolatorSpec::Kind::Logarithmic: return "logarithmic";
    case ExtrapolatorSpec::Kind::Identity: return "identity";
  }
  return "unknown";
}

ExtrapolatorSpec::Kind parse_extrapolator_kind(const std::string& name) {
  using K = ExtrapolatorSpec::Kind;
  for (K k : {K::Dmd, K::Polynomial, K::Exponential, K::Logarithmic, K::Identity}) {
    if (extrapolator_kind_name(k) == name) return k;
  }
  throw std::invalid_argument("unknown extrapolator '" + name + "'");
}

void ExperimentConfig::validate() const {
  chain.validate();
  ansatz.validate();
  scheme.validate();
  if (ansatz.n_qubits != chain.n_qubits) {
    throw std::invalid_argument("ansatz.n_qubits must match chain.n_qubits");
  }
  if (r_train.first < 1 || r_train.last < r_train.first) {
    throw std::invalid_argument("r_train must be a non-empty range of positive integers");
  }
  if (r_eval.first < 1 || r_eval.last < r_eval.first) {
    throw std::invalid_argument("r_eval must be a non-empty range of positive integers");
  }
  if (r_eval.first > r_train.first || r_eval.last < r_train.last) {
    throw std::invalid_argument("r_eval must contain r_train");
  }
  if (seeds.empty()) throw std::invalid_argument("seeds must not be empty");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  if (loss.alpha < 0.0 || loss.alpha > 1.0 || loss.beta < 0.0 || loss.beta > 1.0) {
    throw std::invalid_argument("loss.alpha and loss.beta must lie in [0, 1]");
  }
  if (optimizer.nft.sweeps < 1) throw std::invalid_argument("optimizer.nft.sweeps must be >= 1");
  if (optimizer.spsa.iterations < 1) {
    throw std::invalid_argument("optimizer.spsa.iterations must be >= 1");
  }
  if (extrapolator.degree < 1) throw std::invalid_argument("extrapolator.degree must be >= 1");
  if (extrapolator.window < 0) throw std::invalid_argument("extrapolator.window must be >= 0");
  if (trotter_compare.r_max < 1) throw std::invalid_argument("trotter_compare.r_max must be >= 1");
  if (metrics.min_layers < 1 || metrics.max_layers < metrics.min_layers) {
    throw std::invalid_argument("metrics layer range is empty");
  }
  if (metrics.samples < 1) throw std::invalid_argument("metrics.samples must be >= 1");
  if (metrics.pairs < 100) throw std::invalid_argument("metrics.pairs must be >= 100");
  if (metrics.bins < 10) throw std::invalid_argument("metrics.bins must be >= 10");
}

ExperimentConfig default_config(int n_qubits) {
  ExperimentConfig c;
  c.chain.n_qubits = n_qubits;
  c.ansatz.n_qubits = n_qubits;
  c.ansatz.layers = default_layers(n_qubits);
  return c;
}

namespace {

// Reads keys from one JSON object and rejects any it never asked for.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw std::invalid_argument(where_ + " must be a JSON object");
  }

  template <typename T>
  bool get(const char* key, T& out) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) return false;
    try {
      out = it->get<T>();
    } catch (const json::exception& e) {
      throw std::invalid_argument(where_ + "." + key + ": " + e.what());
    }
    return true;
  }

  const json* child(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  std::string path(const char* key) const { return where_ + "." + key; }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) throw std::invalid_argument("unknown config key " + where_ + "." + key);
    }
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

IntRange parse_range(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    throw std::invalid_argument(where + " must be [first, last]");
  }
  return {j[0].get<int>(), j[1].get<int>()};
}

void read_chain(ObjectReader& rd, SpinChainSpec& chain) {
  rd.get("n_qubits", chain.n_qubits);
  rd.get("jx", chain.jx);
  rd.get("jy", chain.jy);
  rd.get("jz", chain.jz);
  rd.get("hx", chain.hx);
  rd.get("hz", chain.hz);
  rd.get("time", chain.time);
  std::string boundary;
  if (rd.get("boundary", boundary)) {
    if (boundary == "open") chain.boundary = Boundary::Open;
    else if (boundary == "periodic") chain.boundary = Boundary::Periodic;
    else throw std::invalid_argument("chain.boundary must be open or periodic");
  }
  rd.finish();
}

}  // namespace

ExperimentConfig config_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  ExperimentConfig c;
  ObjectReader top(doc, "config");

  if (const json* j = top.child("chain")) {
    ObjectReader rd(*j, "chain");
    read_chain(rd, c.chain);
  }
  c.ansatz.n_qubits = c.chain.n_qubits;
  c.ansatz.layers = default_layers(c.chain.n_qubits);
  if (const json* j = top.child("ansatz")) {
    ObjectReader rd(*j, "ansatz");
    rd.get("layers", c.ansatz.layers);
    std::string s;
    if (rd.get("topology", s)) c.ansatz.topology = parse_topology(s);
    if (rd.get("initial_state", s)) c.ansatz.initial_state = parse_initial_state(s);
    rd.finish();
  }
  {
    std::string s;
    if (top.get("scheme", s)) c.scheme = TrotterScheme::parse(s);
  }
  if (const json* j = top.child("r_train")) c.r_train = parse_range(*j, "r_train");
  if (const json* j = top.child("r_eval")) c.r_eval = parse_range(*j, "r_eval");

  if (const json* j = top.child("loss")) {
    ObjectReader rd(*j, "loss");
    std::string s;
    if (rd.get("kind", s)) c.loss.kind = parse_loss_kind(s);
    rd.get("alpha", c.loss.alpha);
    rd.get("beta", c.loss.beta);
    rd.get("gamma", c.loss.gamma);
    rd.get("c", c.loss.c);
    rd.finish();
  }
  if (const json* j = top.child("optimizer")) {
    ObjectReader rd(*j, "optimizer");
    std::string reg;
    if (rd.get("regularized", reg)) {
      if (reg == "nft") c.optimizer.regularized = OptimizerSpec::Regularized::Nft;
      else if (reg == "spsa") c.optimizer.regularized = OptimizerSpec::Regularized::Spsa;
      else throw std::invalid_argument("optimizer.regularized must be nft or spsa");
    }
    if (const json* n = rd.child("nft")) {
      ObjectReader nr(*n, "optimizer.nft");
      nr.get("sweeps", c.optimizer.nft.sweeps);
      nr.get("tolerance", c.optimizer.nft.tolerance);
      nr.finish();
    }
    if (const json* s = rd.child("spsa")) {
      ObjectReader sr(*s, "optimizer.spsa");
      auto& sp = c.optimizer.spsa;
      sr.get("iterations", sp.iterations);
      sr.get("a", sp.a);
      sr.get("c", sp.c);
      sr.get("stability", sp.stability);
      sr.get("alpha", sp.alpha);
      sr.get("gamma", sp.gamma);
      sr.get("max_step", sp.max_step);
      sr.finish();
    }
    rd.finish();
  }
  if (const json* j = top.child("extrapolator")) {
    ObjectReader rd(*j, "extrapolator");
    auto& ex = c.extrapolator;
    std::string s;
    if (rd.get("kind", s)) ex.kind = parse_extrapolator_kind(s);
    if (rd.get("rank_policy", s)) {
      if (s == "energy") ex.rank.kind = RankPolicy::Kind::EnergyThreshold;
      else if (s == "fixed") ex.rank.kind = RankPolicy::Kind::Fixed;
      else throw std::invalid_argument("extrapolator.rank_policy must be energy or fixed");
    }
    rd.get("rank", ex.rank.rank);
    rd.get("energy_threshold", ex.rank.threshold);
    if (rd.get("amplitudes", s)) {
      if (s == "first_snapshot") ex.amplitudes = AmplitudeFit::FirstSnapshot;
      else if (s == "all_snapshots") ex.amplitudes = AmplitudeFit::AllSnapshots;
      else throw std::invalid_argument("extrapolator.amplitudes must be first_snapshot or all_snapshots");
    }
    rd.get("degree", ex.degree);
    rd.get("unwrap", ex.unwrap);
    rd.get("window", ex.window);
    rd.get("growth_bound", ex.growth_bound);
    rd.finish();
  }
  top.get("seeds", c.seeds);
  top.get("output_dir", c.output_dir);
  top.get("refine", c.refine);
  top.get("train_heldout", c.train_heldout);
  top.get("record_timing", c.record_timing);
  top.get("threads", c.threads);
  if (const json* j = top.child("trotter_compare")) {
    ObjectReader rd(*j, "trotter_compare");
    rd.get("r_max", c.trotter_compare.r_max);
    std::string input;
    if (rd.get("initial_state", input)) c.trotter_compare.initial_state = parse_trotter_input(input);
    std::vector<std::string> names;
    if (rd.get("schemes", names)) {
      c.trotter_compare.schemes.clear();
      for (const auto& n : names) c.trotter_compare.schemes.push_back(TrotterScheme::parse(n));
    }
    rd.finish();
  }
  if (const json* j = top.child("metrics")) {
    ObjectReader rd(*j, "metrics");
    auto& m = c.metrics;
    rd.get("min_layers", m.min_layers);
    rd.get("max_layers", m.max_layers);
    std::vector<std::string> names;
    if (rd.get("topologies", names)) {
      m.topologies.clear();
      for (const auto& n : names) m.topologies.push_back(parse_topology(n));
    }
    rd.get("samples", m.samples);
    rd.get("pairs", m.pairs);
    rd.get("bins", m.bins);
    std::string s;
    if (rd.get("general_initial_state", s)) m.general_initial_state = parse_initial_state(s);
    rd.finish();
  }
  top.finish();
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str());
}

std::string config_to_json(const ExperimentConfig& c) {
  json j;
  j["chain"] = {{"n_qubits", c.chain.n_qubits}, {"jx", c.chain.jx}, {"jy", c.chain.jy},
                {"jz", c.chain.jz},             {"hx", c.chain.hx}, {"hz", c.chain.hz},
                {"time", c.chain.time},
                {"boundary", c.chain.boundary == Boundary::Open ? "open" : "periodic"}};
  j["ansatz"] = {{"layers", c.ansatz.layers},
                 {"topology", topology_name(c.ansatz.topology)},
                 {"initial_state", initial_state_name(c.ansatz.initial_state)}};
  j["scheme"] = c.scheme.name();
  j["r_train"] = {c.r_train.first, c.r_train.last};
  j["r_eval"] = {c.r_eval.first, c.r_eval.last};
  j["loss"] = {{"kind", loss_kind_name(c.loss.kind)}, {"alpha", c.loss.alpha},
               {"beta", c.loss.beta}, {"gamma", c.loss.gamma}, {"c", c.loss.c}};
  const auto& sp = c.optimizer.spsa;
  j["optimizer"] = {
      {"regularized", c.optimizer.regularized == OptimizerSpec::Regularized::Nft ? "nft" : "spsa"},
      {"nft", {{"sweeps", c.optimizer.nft.sweeps}, {"tolerance", c.optimizer.nft.tolerance}}},
      {"spsa",
       {{"iterations", sp.iterations}, {"a", sp.a}, {"c", sp.c}, {"stability", sp.stability},
        {"alpha", sp.alpha}, {"gamma", sp.gamma}, {"max_step", sp.max_step}}}};
  const auto& ex = c.extrapolator;
  j["extrapolator"] = {
      {"kind", extrapolator_kind_name(ex.kind)},
      {"rank_policy", ex.rank.kind == RankPolicy::Kind::Fixed ? "fixed" : "energy"},
      {"rank", ex.rank.rank},
      {"energy_threshold", ex.rank.threshold},
      {"amplitudes", ex.amplitudes == AmplitudeFit::FirstSnapshot ? "first_snapshot" : "all_snapshots"},
      {"degree", ex.degree},
      {"unwrap", ex.unwrap},
      {"window", ex.window},
      {"growth_bound", ex.growth_bound}};
  j["seeds"] = c.seeds;
  j["output_dir"] = c.output_dir;
  j["refine"] = c.refine;
  j["train_heldout"] = c.train_heldout;
  j["record_timing"] = c.record_timing;
  j["threads"] = c.threads;
  std::vector<std::string> schemes;
  for (const auto& s : c.trotter_compare.schemes) schemes.push_back(s.name());
  j["trotter_compare"] = {{"r_max", c.trotter_compare.r_max},
                          {"initial_state", trotter_input_name(c.trotter_compare.initial_state)},
                          {"schemes", schemes}};
  std::vector<std::string> topologies;
  for (auto t : c.metrics.topologies) topologies.push_back(topology_name(t));
  j["metrics"] = {{"min_layers", c.metrics.min_layers},
                  {"max_layers", c.metrics.max_layers},
                  {"topologies", topologies},
                  {"samples", c.metrics.samples},
                  {"pairs", c.metrics.pairs},
                  {"bins", c.metrics.bins},
                  {"general_initial_state", initial_state_name(c.metrics.general_initial_state)}};
  return j.dump(2) + "\n";
}

}  // namespace equitrot
