#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "outaut/corpus.hpp"
#include "outaut/descent.hpp"
#include "outaut/genericsum.hpp"
#include "outaut/hilbert.hpp"
#include "outaut/verify.hpp"

using namespace outaut;

namespace {

enum Exit { decided = 0, error = 1, undecided = 2 };

struct Global {
  bool json_out = false;
  SearchOptions opts;
};

std::vector<std::string> split_list(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

void emit(const Global& g, const json& j, const std::string& human) {
  if (g.json_out)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << human;
}

int verdict_exit(Verdict v) { return v == Verdict::unknown ? undecided : decided; }

void env_caps(SearchOptions& o) {
  if (const char* h = std::getenv("OUTAUT_SEARCH_HEIGHT")) o.height = std::stol(h);
  if (const char* b = std::getenv("OUTAUT_SEARCH_BUDGET")) o.budget = std::stoul(b);
  if (const char* d = std::getenv("OUTAUT_SEARCH_DEGREE")) o.degree = static_cast<unsigned>(std::stoul(d));
}

std::string outness_human(const OutReport& r) {
  auto line = [](const char* name, const OutEntry& e) {
    std::string s = std::string(name) + ": " + to_string(e.status);
    if (e.paper_asserted) s += " (asserted, not machine-verified)";
    return s + "\n";
  };
  return line("Out1", r.out1) + line("Out2", r.out2) + line("Out3", r.out3);
}

int report_exit(const OutReport& r) {
  for (auto* e : {&r.out1, &r.out2, &r.out3})
    if (e->status == OutStatus::unknown) return undecided;
  return decided;
}

Base base_of(const std::string& k) {
  if (k == "Q") return Base::Rationals;
  if (k == "Q(i)") return Base::GaussianRationals;
  throw ParseError("base field must be Q or Q(i), got '" + k + "'", 0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"outaut: quaternion algebras, hermitian forms, similitudes and outer automorphisms"};
  app.require_subcommand(1);
  Global g;
  env_caps(g.opts);
  app.add_flag("--json", g.json_out, "machine-readable output");
  app.add_option("--height", g.opts.height, "integer height bound for searches over Q");
  app.add_option("--budget", g.opts.budget, "trials per search");
  app.add_option("--degree", g.opts.degree, "monomial degree of search coordinates over function fields");

  std::string tower = "Q", a, b;
  std::function<int()> action;

  // symbol
  auto* sym = app.add_subcommand("symbol", "Hilbert symbol (a,b)_v over Q");
  std::string place;
  sym->add_option("--tower", tower);
  sym->add_option("-a", a)->required()->allow_extra_args(false);
  sym->add_option("-b", b)->required();
  sym->add_option("--place", place)->required();
  sym->callback([&] {
    action = [&] {
      if (tower != "Q") throw PreconditionError("Hilbert symbols are computed over Q");
      auto t = FieldTower::parse(tower);
      mpq_class qa = parse_scalar(t, a).constant_value().re(), qb = parse_scalar(t, b).constant_value().re();
      auto v = local::Place::parse(place);
      int s = local::hilbert_symbol(qa, qb, v);
      emit(g, json{{"a", qa.get_str()}, {"b", qb.get_str()}, {"place", v.str()}, {"symbol", s}}, std::to_string(s) + "\n");
      return int(decided);
    };
  });

  // isotropy
  auto* iso = app.add_subcommand("isotropy", "anisotropy certificate or representation of a value");
  std::string form, value;
  iso->add_option("--tower", tower);
  iso->add_option("--form", form, "comma-separated diagonal entries")->required();
  iso->add_option("--represents", value, "decide whether the form represents this value");
  iso->callback([&] {
    action = [&] {
      auto t = FieldTower::parse(tower);
      auto q = QuadForm::parse(t, split_list(form));
      if (!value.empty()) {
        auto r = represents(q, parse_scalar(t, value), g.opts);
        json j{{"form", q.strings()}, {"value", value}, {"verdict", to_string(r.verdict)}, {"cert", r.cert.to_json()}};
        if (r.verdict != Verdict::unknown) j["verified"] = verify(r.cert);
        emit(g, j, "represents " + value + ": " + to_string(r.verdict) + "\n");
        return verdict_exit(r.verdict);
      }
      auto r = certify_anisotropic(q, g.opts);
      json j{{"form", q.strings()}, {"verdict", to_string(r.verdict)}, {"cert", r.cert.to_json()}};
      if (r.verdict != Anisotropy::unknown) j["verified"] = verify(r.cert);
      if (!r.witness.empty()) j["witness"] = qf_detail::scalar_strings(r.witness);
      emit(g, j, to_string(r.verdict) + "\n");
      return r.verdict == Anisotropy::unknown ? int(undecided) : int(decided);
    };
  });

  // quat
  auto* qu = app.add_subcommand("quat", "quaternion algebra queries");
  std::string element, square, split_over;
  qu->add_option("--tower", tower);
  qu->add_option("-a", a)->required();
  qu->add_option("-b", b)->required();
  qu->add_option("--element", element, "report norm, trace and square of an element");
  qu->add_option("--pure-square", square, "find a pure quaternion with this square");
  qu->add_option("--split-over", split_over, "decide whether F(sqrt(delta)) splits the algebra");
  qu->callback([&] {
    action = [&] {
      auto t = FieldTower::parse(tower);
      auto Q = parse_quat_algebra(t, a, b);
      json j{{"algebra", Q->str()}};
      std::string human;
      int code = decided;
      if (!element.empty()) {
        Quat x = parse_quat(Q, element);
        j["element"] = json{{"value", quat_str(x)}, {"nrd", x.nrd().str()}, {"trd", x.trd().str()},
                            {"square", quat_str(x * x)}, {"pure", x.is_pure()}};
        human += "Nrd = " + x.nrd().str() + ", Trd = " + x.trd().str() + "\n";
      }
      if (!square.empty()) {
        auto r = pure_with_square(Q, parse_scalar(t, square), g.opts);
        j["pure_square"] = json{{"verdict", to_string(r.verdict)}, {"cert", r.cert.to_json()}};
        if (r.element) j["pure_square"]["element"] = quat_str(*r.element);
        human += "pure with square " + square + ": " + to_string(r.verdict) + (r.element ? " " + quat_str(*r.element) : "") + "\n";
        if (r.verdict == Verdict::unknown) code = undecided;
      }
      if (!split_over.empty()) {
        auto r = splits_over(Q, parse_scalar(t, split_over), g.opts);
        j["splits_over"] = json{{"verdict", to_string(r.verdict)}, {"cert", r.cert.to_json()}};
        human += "split over F(sqrt(" + split_over + ")): " + to_string(r.verdict) + "\n";
        if (r.verdict == Verdict::unknown) code = undecided;
      }
      if (element.empty() && square.empty() && split_over.empty()) {
        auto r = is_division(Q, g.opts);
        std::string v = r.verdict == Division::division ? "division" : r.verdict == Division::split ? "split" : "unknown";
        j["division"] = json{{"verdict", v}, {"cert", r.cert.to_json()}};
        if (r.zero_divisor) j["division"]["zero_divisor"] = quat_str(*r.zero_divisor);
        human += v + "\n";
        if (r.verdict == Division::unknown) code = undecided;
      }
      emit(g, j, human);
      return code;
    };
  });

  // similitude
  auto* si = app.add_subcommand("similitude", "diagonal similitude of a skew-hermitian form <q_1,...,q_n>");
  std::string entries, mu, pattern;
  si->add_option("--tower", tower);
  si->add_option("-a", a)->required();
  si->add_option("-b", b)->required();
  si->add_option("--entries", entries, "comma-separated pure quaternions")->required();
  si->add_option("--mu", mu, "multiplier")->required();
  si->add_option("--pattern", pattern, "one of + (proper) or - (improper) per entry")->required();
  si->callback([&] {
    action = [&] {
      auto t = FieldTower::parse(tower);
      auto Q = parse_quat_algebra(t, a, b);
      std::vector<Quat> qs;
      for (auto& s : split_list(entries)) qs.push_back(parse_quat(Q, s));
      SkewHermForm h(Q, qs);
      if (pattern.size() != qs.size()) throw PreconditionError("pattern length must equal the number of entries");
      std::vector<SimType> pat;
      for (char c : pattern) {
        if (c != '+' && c != '-') throw ParseError("pattern characters must be + or -", 0);
        pat.push_back(c == '+' ? SimType::proper : SimType::improper);
      }
      Scalar m = parse_scalar(t, mu);
      auto r = build_diagonal_similitude(h, m, pat, g.opts);
      json j{{"form", h.to_json()}, {"mu", m.str()}, {"pattern", pattern}, {"verdict", to_string(r.verdict)}};
      json blocks = json::array();
      for (auto& bl : r.blocks)
        blocks.push_back(json{{"index", bl.index}, {"type", to_string(bl.type)}, {"verdict", to_string(bl.verdict)},
                              {"cert", bl.cert.to_json()}});
      j["blocks"] = blocks;
      std::string human = "similitude: " + to_string(r.verdict) + "\n";
      if (r.similitude) {
        auto chk = verify_similitude(h, r.similitude->g, m);
        j["similitude"] = r.similitude->to_json();
        j["verified"] = json{{"valid", chk.valid}, {"type", to_string(chk.type)}};
        human += "type " + to_string(chk.type) + ", verified " + (chk.valid ? "yes" : "no") + "\n";
      }
      emit(g, j, human);
      return verdict_exit(r.verdict);
    };
  });

  // outness
  auto* ou = app.add_subcommand("outness", "decide Out1, Out2, Out3");
  std::string family, squares, kfield = "Q(i)";
  std::size_t n = 0, m = 1;
  bool even = false, odd = false, unitary = false;
  ou->add_option("--tower", tower);
  ou->add_option("-a", a);
  ou->add_option("-b", b);
  ou->add_option("--entries", entries, "pure quaternions q_1..q_n of a generic sum <t_1 q_1,...,t_n q_n>");
  ou->add_option("--squares", squares, "labels of the distinct squares");
  ou->add_option("--n", n);
  ou->add_option("--m", m, "rank of the hermitian part of the unitary family");
  ou->add_option("--k", kfield, "base field of the unitary family: Q or Q(i)");
  ou->add_flag("--even", even, "the even-degree family over Q(i)(a1,a2)(r,s,t)");
  ou->add_flag("--odd", odd, "the odd-degree family over k(a1,a2)");
  ou->add_flag("--unitary", unitary, "the unitary family");
  ou->callback([&] {
    action = [&] {
      if (int(even) + int(odd) + int(unitary) > 1) throw PreconditionError("choose at most one family");
      json extra;
      OutReport r;
      if (even) {
        if (tower != "Q" && FieldTower::parse(tower)->str() != FieldTower::parse("Q(i)[a1,a2][r,s,t]")->str())
          throw PreconditionError("the even family lives over Q(i)[a1,a2][r,s,t]");
        auto ex = d_even_example(n ? n : 4, g.opts);
        r = ex.report;
        extra = ex.extra;
      } else if (odd) {
        auto t = FieldTower::parse(tower);
        auto ex = d_odd_example(t->base(), n ? n : 3, g.opts);
        r = ex.report;
        extra = ex.extra;
      } else if (unitary) {
        r = verify_unitary_example(m, base_of(kfield), g.opts).report;
      } else {
        if (a.empty() || b.empty() || entries.empty())
          throw PreconditionError("generic mode needs -a, -b and --entries");
        auto t = FieldTower::parse(tower);
        auto Q = parse_quat_algebra(t, a, b);
        GenericSumInput in{Q, {}, {}, {}, g.opts, {}};
        for (auto& s : split_list(entries)) in.q.push_back(parse_quat(Q, s));
        if (n && n != in.q.size()) throw PreconditionError("--n disagrees with the number of entries");
        r = decide_out_generic(in);
      }
      if (!squares.empty()) r.parameters["square_labels"] = split_list(squares);
      json j = r.to_json();
      if (!extra.is_null()) j["extra"] = extra;
      j["monotone"] = r.monotone();
      emit(g, j, outness_human(r));
      return report_exit(r);
    };
  });

  // descend
  auto* de = app.add_subcommand("descend", "descend a unitary hermitian form of rank <= 3");
  std::string d;
  std::vector<std::string> hentries;
  de->add_option("--tower", tower);
  de->add_option("-a", a)->required();
  de->add_option("-b", b)->required();
  de->add_option("-d", d, "K = F(sqrt(d))")->required();
  de->add_option("--entry", hentries, "entry f;p meaning f + p*sqrt(d), f in F, p pure (repeatable)")->required();
  de->callback([&] {
    action = [&] {
      auto t = FieldTower::parse(tower);
      auto Q0 = parse_quat_algebra(t, a, b);
      auto D = std::make_shared<const UnitaryDatum>(Q0, parse_scalar(t, d));
      std::vector<QuatHat> es;
      for (auto& e : hentries) {
        auto parts = split_list(e, ';');
        if (parts.size() != 2) throw ParseError("entry must have the form f;p", 0);
        es.push_back(D->combine(parse_quat(Q0, parts[0]), parse_quat(Q0, parts[1])));
      }
      UnitaryHermForm h(D, es);
      auto r = descend(h);
      json j = r.to_json(*D);
      std::string human = "q = " + D->str(r.q) + "\nQ0' = " + r.q0prime->str() + "\nh' = <";
      for (std::size_t i = 0; i < r.hprime->rank(); ++i) human += (i ? ", " : "") + quat_str(r.hprime->entries()[i]);
      human += ">\nchecks: " + std::string(r.checks.all() ? "all pass" : "FAILED") + "\n";
      emit(g, j, human);
      return int(decided);
    };
  });

  // verify-paper
  auto* vp = app.add_subcommand("verify-paper", "re-derive every claim of the corpus");
  std::string corpus = OUTAUT_CORPUS_PATH;
  vp->add_option("--corpus", corpus, "line-delimited JSON corpus");
  vp->callback([&] {
    action = [&] {
      auto rep = verify_corpus(corpus, g.opts);
      std::string human;
      for (auto& o : rep.outcomes) {
        std::string tag = o.status == "paper-asserted" ? "ASSERTED" : (o.pass ? "ok" : "FAIL");
        human += tag + "  " + o.id + (o.error.empty() ? "" : "  (" + o.error + ")") + "\n";
      }
      human += std::to_string(rep.count("verified", true)) + " verified, " + std::to_string(rep.count("verified", false)) +
               " failed, " + std::to_string(rep.asserted()) + " asserted without machine proof\n";
      emit(g, rep.to_json(), human);
      return rep.ok() ? int(decided) : int(error);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : int(error);
  }
  try {
    return action();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const CapacityError& e) {
    std::cerr << "capacity exceeded: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return error;
}
