// shrinkca: keystream generation, CA linearization and seed recovery from the shell.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "shrinkca/shrinkca.hpp"
#include "shrinkca/spec_io.hpp"

namespace {

using namespace shrinkca;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitValidation = 2;
constexpr int kExitExhausted = 3;
constexpr int kExitAmbiguous = 4;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Exhausted:
    case ErrorCode::ConflictingReconstruction: return kExitExhausted;
    case ErrorCode::Ambiguous: return kExitAmbiguous;
    case ErrorCode::SynthesisFailed: return kExitOther;
    default: return kExitValidation;
  }
}

/// Writes to --output when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
    }
  }
  std::ostream& out() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

struct GenerateOpts {
  std::string spec;
  std::size_t bits = 0;
  std::string kind = "shrink";
  unsigned reg = 1;
  std::size_t cell = 1;
  std::string output;
};

void run_generate(const GenerateOpts& o) {
  const json doc = read_json_file(o.spec);
  BitSeq out;
  if (o.kind == "ca") {
    const CaState st = ca_from_json(doc);
    if (o.cell < 1 || o.cell > st.rules.size()) throw Error(ErrorCode::InvalidArgument, "--cell out of range");
    out = ca_generate(st, o.bits)[o.cell - 1];
  } else {
    const GeneratorSpec spec = spec_from_json(doc);
    for (const auto& w : validate(spec, true)) std::cerr << "warning: " << w << "\n";
    if (o.kind == "shrink") {
      out = shrink_generate(spec, o.bits);
    } else if (o.kind == "ccsg") {
      out = ccsg_generate(spec, o.bits);
    } else if (o.kind == "lfsr") {
      if (o.reg == 1) out = lfsr_generate({spec.c1, *spec.is1}, o.bits);
      else out = lfsr_generate({spec.c2, *spec.is2}, o.bits);
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown --kind " + o.kind);
    }
  }
  Sink sink(o.output);
  sink.out() << out.to_string() << "\n";
}

struct LinearizeOpts {
  std::string spec;
  bool trace = false;
  std::string output;
};

void run_linearize(const LinearizeOpts& o) {
  const GeneratorSpec spec = spec_from_json(read_json_file(o.spec));
  for (const auto& w : validate(spec, false)) std::cerr << "warning: " << w << "\n";
  const auto lin = linearize_generator(spec.l1, spec.c2, static_cast<unsigned>(spec.taps.size()));
  Sink sink(o.output);
  auto& os = sink.out();
  os << "exponent " << lin.exponent << "\n";
  os << "p " << lin.p.to_string() << "\n";
  for (std::size_t k = 0; k < 2; ++k) {
    if (o.trace) {
      for (std::size_t s = 0; s < lin.chains[k].size(); ++s)
        os << "ca" << k + 1 << " step " << s << " " << lin.chains[k][s].to_string() << "\n";
    }
    const auto& rv = lin.chains[k].back();
    os << "ca" << k + 1 << " " << rv.to_string() << " " << rv.to_hex() << "\n";
  }
}

void run_synthesize(const std::string& poly) {
  const auto [a, b] = synthesize_ca_pair(Gf2Poly::parse(poly));
  std::cout << a.to_string() << " " << a.to_hex() << "\n" << b.to_string() << " " << b.to_hex() << "\n";
}

struct AttackOpts {
  std::string spec;
  std::string intercepted;
  std::uint64_t origin = 0;
  bool trace = false;
  std::string output;
};

void print_trace(const AttackResult& r, std::ostream& os) {
  os << "phase 1: " << r.phase1.reconstructed.size() << " bits reconstructed\n";
  for (const auto& d : r.phase1.derivations) {
    if (d.new_bits == 0) continue;
    os << "  ca" << d.automaton + 1 << " cell " << d.cell << " depth " << d.depth << " offsets {";
    for (std::size_t k = 0; k < d.offsets.size(); ++k) os << (k ? "," : "") << d.offsets[k];
    os << "} log " << *d.log << " -> " << d.new_bits << " new\n";
  }
  os << "  positions";
  for (auto p : r.phase1.reconstructed) os << " " << p;
  os << "\nphase 2: hypothesis tree\n";
  for (const auto& n : r.phase2.trace) {
    os << "  " << std::string(2 * (n.prefix.size() - 1), ' ') << bits_to_string(n.prefix) << " "
       << to_string(n.status);
    for (const auto& c : n.columns) {
      os << " [C" << c.column + 1 << " at " << c.shift;
      if (!c.contradiction_rows.empty()) {
        os << " contradiction rows";
        for (auto q : c.contradiction_rows) os << " " << q;
      }
      os << "]";
    }
    if (!n.note.empty()) os << " (" << n.note << ")";
    os << "\n";
  }
}

void run_attack(const AttackOpts& o) {
  const GeneratorSpec pub = spec_from_json(read_json_file(o.spec)).public_part();
  for (const auto& w : validate(pub, false)) std::cerr << "warning: " << w << "\n";
  const auto r = full_attack(BitSeq::parse(o.intercepted, o.origin), pub);
  if (o.trace) print_trace(r, std::cerr);
  json j{{"is1", bits_to_string(r.seeds.is1)},
         {"is2", bits_to_string(r.seeds.is2)},
         {"keystream", r.keystream.to_string()},
         {"reconstructed_positions", r.phase1.reconstructed},
         {"nodes_expanded", r.phase2.nodes_expanded},
         {"completions", r.phase2.completions}};
  Sink sink(o.output);
  sink.out() << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shrinking-generator keystreams, 90/150 CA models and seed recovery"};
  app.require_subcommand(1);

  GenerateOpts gen;
  auto* g = app.add_subcommand("generate", "Print keystream, register or automaton bits");
  g->add_option("--spec", gen.spec, "Generator JSON (or automaton JSON for --kind ca)")->required();
  g->add_option("--bits", gen.bits, "Number of bits")->required();
  g->add_option("--kind", gen.kind, "shrink | ccsg | lfsr | ca")
      ->check(CLI::IsMember({"shrink", "ccsg", "lfsr", "ca"}));
  g->add_option("--register", gen.reg, "Register for --kind lfsr (1 or 2)")->check(CLI::Range(1, 2));
  g->add_option("--cell", gen.cell, "1-based cell for --kind ca");
  g->add_option("--output", gen.output, "Write to file instead of stdout");

  LinearizeOpts lin;
  auto* l = app.add_subcommand("linearize", "Print the two CA rule vectors modelling a generator");
  l->add_option("--spec", lin.spec, "Generator JSON (seeds not needed)")->required();
  l->add_flag("--trace", lin.trace, "Print every concatenation step");
  l->add_option("--output", lin.output, "Write to file instead of stdout");

  std::string poly;
  auto* s = app.add_subcommand("synthesize", "Print the reversal 90/150 pair for a polynomial");
  s->add_option("--poly", poly, "Exponent list, e.g. 0,2,5")->required();

  AttackOpts atk;
  auto* a = app.add_subcommand("attack", "Recover both initial states from an intercepted prefix");
  a->add_option("--spec", atk.spec, "Public generator JSON")->required();
  a->add_option("--intercepted", atk.intercepted, "Intercepted keystream bits")->required();
  a->add_option("--origin", atk.origin, "Absolute position of the first intercepted bit");
  a->add_flag("--trace", atk.trace, "Print the phase-1 ledger and hypothesis tree to stderr");
  a->add_option("--output", atk.output, "Write JSON to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*g) run_generate(gen);
    else if (*l) run_linearize(lin);
    else if (*s) run_synthesize(poly);
    else if (*a) run_attack(atk);
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
}
