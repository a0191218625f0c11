// kmtool: batch front end. Every subcommand prints JSON lines on stdout.
#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "kacmoody/env.hpp"
#include "kacmoody/errors.hpp"
#include "kacmoody/gcm.hpp"
#include "kacmoody/group.hpp"
#include "kacmoody/lie.hpp"
#include "kacmoody/loop.hpp"
#include "kacmoody/weyl.hpp"

using json = nlohmann::ordered_json;
using namespace kacmoody;

namespace {

void emit(const json& j) { std::cout << j.dump() << '\n'; }

json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return to_string(z);
}

json rational_json(const Rational& q) {
  if (is_integer(q)) return integer_json(q.get_num());
  return to_string(q);
}

// `<root>` is the canonical vector of a real root, `<root>#k` the k-th basis
// vector of that root space, `h<i>` a simple coroot.
LieElt parse_vector(LieAlgebra& lie, const std::string& text) {
  if (!text.empty() && text[0] == 'h') {
    int i = -1;
    try {
      i = std::stoi(text.substr(1));
    } catch (const std::exception&) {
      throw ParseError("bad coroot literal '" + text + "'");
    }
    if (i < 0 || i >= lie.rank()) throw ParseError("coroot index out of range in '" + text + "'");
    return lie.coroot(i);
  }
  auto hash = text.find('#');
  RootVec root = parse_root(text.substr(0, hash), lie.rank());
  if (hash == std::string::npos) return lie.canonical_e(root);
  auto keys = lie.basis(root);
  int k = std::stoi(text.substr(hash + 1));
  if (k < 0 || k >= static_cast<int>(keys.size())) throw NotARoot("no basis vector " + text);
  return LieAlgebra::basis_vector(keys[k]);
}

json report_json(const RelationReport& rep) {
  json j;
  j["relation"] = rep.relation;
  j["params"] = rep.params;
  j["holds"] = rep.holds;
  j["checked"] = rep.checked;
  if (rep.epsilon) j["epsilon"] = *rep.epsilon;
  if (rep.witness) j["witness"] = *rep.witness;
  return j;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text + ",") {
    if (c == ',' || c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

// "R0..R4" is accepted as a range.
std::vector<std::string> parse_relations(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) return split_list(text);
  auto index = [&](const std::string& s) {
    if (s.size() != 2 || s[0] != 'R' || s[1] < '0' || s[1] > '4')
      throw ParseError("bad relation name '" + s + "'");
    return s[1] - '0';
  };
  std::vector<std::string> out;
  for (int k = index(text.substr(0, dots)); k <= index(text.substr(dots + 2)); ++k)
    out.push_back("R" + std::to_string(k));
  return out;
}

int run_classify(const Gcm& g) {
  for (const auto& block : components(g)) {
    json j;
    j["block"] = block;
    j["type"] = to_string(classify(g, block));
    emit(j);
  }
  return 0;
}

int run_roots(const Gcm& g, int h) {
  LieAlgebra lie(g, std::max(h, 1));
  for (const auto& r : lie.positive_roots(h)) {
    json j;
    j["root"] = r.root;
    j["height"] = height(r.root);
    j["mult"] = r.mult;
    j["real"] = r.real;
    emit(j);
  }
  return 0;
}

int run_mult(const Gcm& g, const std::string& text) {
  RootVec root = parse_root(text, g.size());
  LieAlgebra lie(g, std::max(std::abs(height(root)), 1));
  json j;
  j["root"] = root;
  RootKind kind = root_kind(g, is_negative(root) ? negated(root) : root);
  j["kind"] = kind == RootKind::Real ? "real" : kind == RootKind::Imaginary ? "imaginary" : "none";
  j["mult"] = is_zero(root) ? 0 : lie.multiplicity(root);
  emit(j);
  return 0;
}

int run_commutator(const Gcm& g, const std::string& a, const std::string& b) {
  RootVec alpha = parse_root(a, g.size()), beta = parse_root(b, g.size());
  LieAlgebra lie(g);
  CommutatorTable table = commutator_constants(lie, alpha, beta);
  for (const auto& e : table.entries) {
    json j;
    j["alpha"] = alpha;
    j["beta"] = beta;
    j["gamma"] = e.gamma;
    j["i"] = e.i;
    j["j"] = e.j;
    j["C"] = integer_json(e.c);
    emit(j);
  }
  if (table.entries.empty()) {
    json j;
    j["alpha"] = alpha;
    j["beta"] = beta;
    j["commute"] = true;
    emit(j);
  }
  return 0;
}

int run_eval(const Gcm& g, const std::string& word_text, const std::string& vec_text,
             const std::string& field_text) {
  FieldSpec f = parse_field(field_text);
  LieAlgebra lie(g);
  GroupWord w = parse_word(word_text, g.size(), f);
  LieElt v = parse_vector(lie, vec_text);
  bool lattice = f.is_prime_field();
  LieElt out = ad_apply(lie, w, lattice ? basis_to_lattice(lie, v) : v, f);
  json terms = json::array();
  for (const auto& [k, c] : out) {
    json t;
    t["root"] = lie.degree_root(k.deg);
    t["index"] = k.idx;
    if (!lattice) t["basis"] = lie.basis_name(k);
    t["coeff"] = rational_json(c);
    terms.push_back(t);
  }
  json j;
  j["word"] = format_word(w);
  j["vector"] = vec_text;
  j["field"] = f.name();
  j["coordinates"] = lattice ? "lattice" : "basis";
  j["terms"] = terms;
  emit(j);
  return 0;
}

int run_check(const Gcm& g, const std::string& relations, int h, const std::string& field_text,
              int root_height) {
  FieldSpec f = parse_field(field_text);
  LieAlgebra lie(g);
  auto reports = relation_sweep(lie, parse_relations(relations), f, h, root_height);
  int failed = 0;
  for (const auto& rep : reports) {
    failed += rep.holds ? 0 : 1;
    json j = report_json(rep);
    j["field"] = f.name();
    emit(j);
  }
  json s;
  s["summary"] = true;
  s["instances"] = reports.size();
  s["failed"] = failed;
  emit(s);
  return failed == 0 ? 0 : 1;
}

int run_oracle(const Gcm& g, int words, unsigned long long seed, int max_len, int h,
               const std::string& field_text) {
  FieldSpec f = parse_field(field_text);
  LieAlgebra lie(g);
  LoopOracle oracle(lie);
  std::mt19937_64 rng(seed);
  int failed = 0;
  for (int k = 0; k < words; ++k) {
    int len = 1 + static_cast<int>(rng() % max_len);
    GroupWord w = random_word(lie, rng, len, f);
    RelationReport rep = oracle.ad_compare(w, h, f);
    failed += rep.holds ? 0 : 1;
    json j;
    j["index"] = k;
    j["word"] = format_word(w);
    j["holds"] = rep.holds;
    j["checked"] = rep.checked;
    if (rep.witness) j["witness"] = *rep.witness;
    emit(j);
  }
  json s;
  s["summary"] = true;
  s["words"] = words;
  s["seed"] = seed;
  s["field"] = f.name();
  s["failed"] = failed;
  emit(s);
  return failed == 0 ? 0 : 1;
}

int run_bruhat(const std::string& text, const std::string& field_text) {
  FieldSpec f = parse_field(field_text);
  LaurentMat m = parse_laurent_mat(text, f);
  auto w = iwahori_bruhat(m, f);
  json j;
  j["matrix"] = to_string(m);
  j["word"] = w;
  j["length"] = w.size();
  emit(j);
  return 0;
}

int run_normalform(const Gcm& g, const std::string& text, int trunc) {
  LieAlgebra lie(g);
  Envelope env(lie, trunc);
  RationalRing r;
  GroupWord w = parse_word(text, g.size(), FieldSpec::rationals());
  auto x = env.one(r);
  for (const auto& l : w) {
    if (l.kind != GroupLetter::Kind::Unip || !is_positive(l.root))
      throw ParseError("normalform takes exponentials x[<positive root>](<scalar>) only");
    RootVec root = l.root;
    root.resize(g.size(), 0);
    x = env.multiply(r, x, env.exp_letter(r, env.real_letter(root), l.scalar));
  }
  auto nf = uma_normal_form(env, x);
  std::vector<int> order;
  std::vector<Rational> lam;
  json terms = json::array();
  for (const auto& t : nf) {
    order.push_back(t.letter);
    lam.push_back(t.lambda);
    if (t.lambda == 0) continue;
    json e;
    e["letter"] = t.letter;
    e["root"] = env.letters()[t.letter].root;
    e["lambda"] = rational_json(t.lambda);
    terms.push_back(e);
  }
  json j;
  j["word"] = format_word(w);
  j["trunc"] = trunc;
  j["letters"] = env.letters().size();
  j["normal_form"] = terms;
  j["roundtrip"] = env.expand(r, order, lam) == x;
  emit(j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kac-Moody algebra and group computations"};
  app.require_subcommand(1);
  std::string gcm_path, field = "Q";

  auto with_gcm = [&](CLI::App* sub) {
    sub->add_option("--gcm", gcm_path, "GCM text file")->required()->check(CLI::ExistingFile);
    return sub;
  };

  auto* classify_cmd = with_gcm(app.add_subcommand("classify", "type of each indecomposable block"));

  int height_opt = 6;
  auto* roots_cmd = with_gcm(app.add_subcommand("roots", "positive roots with multiplicities"));
  roots_cmd->add_option("--height", height_opt)->required();

  std::string root_opt;
  auto* mult_cmd = with_gcm(app.add_subcommand("mult", "multiplicity of one root"));
  mult_cmd->add_option("--root", root_opt)->required();

  std::string alpha_opt, beta_opt;
  auto* comm_cmd = with_gcm(app.add_subcommand("commutator", "commutator constants of a pair"));
  comm_cmd->add_option("--alpha", alpha_opt)->required();
  comm_cmd->add_option("--beta", beta_opt)->required();

  std::string word_opt, vector_opt;
  auto* eval_cmd = with_gcm(app.add_subcommand("eval", "adjoint action of a group word"));
  eval_cmd->add_option("--word", word_opt)->required();
  eval_cmd->add_option("--vector", vector_opt)->required();
  eval_cmd->add_option("--field", field);

  std::string relations_opt;
  int root_height = 2;
  auto* check_cmd = with_gcm(app.add_subcommand("check", "relation sweep"));
  check_cmd->add_option("--relations", relations_opt)->required();
  check_cmd->add_option("--height", height_opt)->required();
  check_cmd->add_option("--field", field);
  check_cmd->add_option("--root-height", root_height);

  int words = 100, max_len = 12;
  unsigned long long seed = 1;
  auto* oracle_cmd = with_gcm(app.add_subcommand("oracle", "random ad_compare run (mt19937_64)"));
  oracle_cmd->add_option("--words", words)->required();
  oracle_cmd->add_option("--seed", seed)->required();
  oracle_cmd->add_option("--length", max_len);
  oracle_cmd->add_option("--height", height_opt);
  oracle_cmd->add_option("--field", field);

  std::string matrix_opt;
  auto* bruhat_cmd = app.add_subcommand("bruhat", "Iwahori-Bruhat cell of an SL2 loop matrix");
  bruhat_cmd->add_option("--matrix", matrix_opt)->required();
  bruhat_cmd->add_option("--field", field);

  std::string exps_opt;
  int trunc = 6;
  auto* nf_cmd = with_gcm(app.add_subcommand("normalform", "normal form of a product of exponentials"));
  nf_cmd->add_option("--word-of-exps", exps_opt)->required();
  nf_cmd->add_option("--trunc", trunc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Gcm g = gcm_path.empty() ? Gcm::validate({{2}}) : load_gcm(gcm_path);
    if (*classify_cmd) return run_classify(g);
    if (*roots_cmd) return run_roots(g, height_opt);
    if (*mult_cmd) return run_mult(g, root_opt);
    if (*comm_cmd) return run_commutator(g, alpha_opt, beta_opt);
    if (*eval_cmd) return run_eval(g, word_opt, vector_opt, field);
    if (*check_cmd) return run_check(g, relations_opt, height_opt, field, root_height);
    if (*oracle_cmd) {
      if (!oracle_cmd->count("--height")) height_opt = 6;
      if (!oracle_cmd->count("--field")) field = "Fp:7";
      return run_oracle(g, words, seed, max_len, height_opt, field);
    }
    if (*bruhat_cmd) return run_bruhat(matrix_opt, field);
    if (*nf_cmd) return run_normalform(g, exps_opt, trunc);
  } catch (const ParseError& e) {
    std::cerr << "kmtool: " << e.what() << '\n';
    return 2;
  } catch (const InvalidGcm& e) {
    std::cerr << "kmtool: invalid GCM: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "kmtool: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
