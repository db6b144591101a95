#include "vfk/service/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <sstream>

#include "vfk/automata.hpp"
#include "vfk/bijections.hpp"
#include "vfk/serialization.hpp"
#include "vfk/service/api.hpp"
#include "vfk/service/http_server.hpp"
#include "vfk/utf8.hpp"

namespace vfk::service {

using nlohmann::json;

namespace {

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out.write(bytes.data(), std::streamsize(bytes.size()));
  if (!out) throw Error("write failed for " + path);
}

std::string strip_newline(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

struct SynthOptions {
  std::optional<std::string> preset;
  std::optional<int> i, j, k, periods, amplitude, jitter, noise, height, edge_intensity;
  std::optional<double> eps, w_min;
  std::vector<double> c;
  std::uint64_t seed = 0;
  std::string output;
  std::string emit_string;
  std::string truth;
  bool ascii = false;
};

int run_synth(const SynthOptions& o, std::ostream& out) {
  json spec = json::object();
  auto put = [&](const char* key, const auto& v) {
    if (v) spec[key] = *v;
  };
  put("i", o.i), put("j", o.j), put("k", o.k), put("amplitude", o.amplitude), put("jitter", o.jitter);
  put("noise", o.noise), put("height", o.height), put("edge_intensity", o.edge_intensity);
  put("eps", o.eps), put("w_min", o.w_min);
  if (!o.c.empty()) spec["c"] = o.c;
  json body{{"spec", spec}, {"seed", o.seed}};
  if (o.preset) body["preset"] = *o.preset;
  if (o.periods) body["periods"] = *o.periods;

  const Synthesis syn = synthesize(resolve_spec(body));
  write_text(o.output, o.ascii ? image::save_pgm(syn.kymogram.image, false) : syn.pgm);
  const std::string truth = o.truth.empty() ? o.output + ".truth.json" : o.truth;
  write_text(truth, kymo::ground_truth_to_json(syn.kymogram).dump() + "\n");
  out << "wrote " << o.output << " (" << syn.kymogram.image.width() << "x" << syn.kymogram.image.height() << ")\n";
  out << "wrote " << truth << "\n";
  if (!o.emit_string.empty()) {
    write_text(o.emit_string, syn.kymogram.source.text() + "\n");
    out << "wrote " << o.emit_string << " (" << syn.kymogram.source.size() << " symbols)\n";
  }
  return 0;
}

struct DecideOptions {
  std::string string_file;
  std::optional<std::string> text;
  std::vector<double> c{1.0, 1.0, 1.0};
  double eps = 0.2;
  bool as_json = false;
};

int run_decide(const DecideOptions& o, std::ostream& out) {
  if (o.c.size() != 3) throw InvalidArgument("--c takes three constants");
  const std::string text = o.text ? *o.text : strip_newline(read_text(o.string_file));
  const kymo::Decision d =
      kymo::decide_vncfl(kymo::VString(text), kymo::Proportions{o.c[0], o.c[1], o.c[2], o.eps});
  if (o.as_json) {
    out << kymo::decision_to_json(d).dump() << "\n";
    return 0;
  }
  out << automata::to_string(d.verdict) << "\n";
  if (d.violation) {
    const auto& v = *d.violation;
    out << "violation: run " << v.run_index << " at position " << v.position << " ('" << v.symbol
        << "' x " << v.length << "): " << v.reason << "\n";
  }
  return 0;
}

struct DeformOptions {
  std::string image;
  std::optional<double> alpha, beta, gamma;
  std::string rigidity;
  std::string params_file;
  std::string snake_file;
  std::string constraints_file;
  std::optional<double> min_spacing, max_spacing;
  bool column_locked = false;
  int stride = 1;
  std::optional<int> midline;
  std::optional<int> band_halfwidth;
  std::size_t max_iter = kymo::kDefaultTemporalMaxIter;
  bool step = false;
  int window = snake::kDefaultWindowRadius;
  std::string field = "intensity";
  std::string output;
};

int run_deform(const DeformOptions& o, std::ostream& out) {
  const image::GrayImage img = image::read_pgm_file(o.image);
  json pj = o.params_file.empty() ? json::object() : read_json(o.params_file);
  if (o.alpha) pj["alpha"] = *o.alpha;
  if (o.beta) pj["beta"] = *o.beta;
  if (o.gamma) pj["gamma"] = *o.gamma;
  if (!o.rigidity.empty()) pj["rigidity"] = o.rigidity;
  const snake::SnakeParams params = snake::params_from_json(pj, kymo::default_temporal_params());
  const std::size_t max_iter = o.step ? 1 : o.max_iter;
  const FieldChoice field = parse_field_choice(o.field);
  const auto source = field == FieldChoice::intensity ? kymo::FieldSource::intensity_is_gradient
                                                      : kymo::FieldSource::gradient_of_intensity;

  json result;
  if (!o.snake_file.empty()) {
    const snake::Snake s0 = read_json(o.snake_file).get<snake::Snake>();
    snake::HardConstraints hc =
        snake::constraints_from_json(o.constraints_file.empty() ? json(nullptr) : read_json(o.constraints_file));
    if (o.min_spacing) hc.min_spacing = o.min_spacing;
    if (o.max_spacing) hc.max_spacing = o.max_spacing;
    if (o.column_locked) {
      hc.column_locked = true;
      hc.stride = o.stride;
    }
    result = snake::deform(s0, kymo::external_field(img, source), params, hc, max_iter, o.window);
  } else {
    const int midline = o.midline ? *o.midline : kymo::estimate_midline(img);
    const int bhw = o.band_halfwidth ? *o.band_halfwidth : std::max(0, std::min(midline, img.height() - 1 - midline));
    const kymo::TemporalSnakes t = kymo::temporal_snake_transform(img, params, midline, bhw, source, max_iter);
    result = json{{"midline", midline}, {"band_halfwidth", bhw}, {"upper", t.upper}, {"lower", t.lower}};
  }
  if (o.output.empty()) {
    out << result.dump() << "\n";
  } else {
    write_text(o.output, result.dump(2) + "\n");
    out << "wrote " << o.output << "\n";
  }
  return 0;
}

struct DfaOptions {
  std::optional<std::string> pattern;
  std::optional<std::string> alphabet;
  std::optional<std::string> input;
  std::string input_file;
  std::string encoded_file;
  bool encode = false;
};

int run_dfa(const DfaOptions& o, std::ostream& out) {
  if (!o.encoded_file.empty()) {
    if (o.encode || o.pattern) throw InvalidArgument("--encoded cannot be combined with --pattern or --encode");
  } else if (!o.pattern) {
    throw InvalidArgument("one of --pattern or --encoded is required");
  }
  if (o.encode) {
    const std::u32string pattern = utf8::decode(*o.pattern);
    const std::u32string sigma = o.alphabet ? utf8::decode(*o.alphabet) : default_dfa_alphabet(pattern);
    out << automata::encode_dfa(automata::build_substring_dfa(pattern, sigma));
    return 0;
  }
  if (!o.input && o.input_file.empty()) throw InvalidArgument("one of --input or --input-file is required");
  const std::u32string input = utf8::decode(o.input ? *o.input : strip_newline(read_text(o.input_file)));
  automata::RunResult r;
  if (!o.encoded_file.empty()) {
    r = automata::simulate_encoded_dfa(read_text(o.encoded_file), input);
  } else {
    const std::u32string pattern = utf8::decode(*o.pattern);
    const std::u32string sigma = o.alphabet ? utf8::decode(*o.alphabet) : default_dfa_alphabet(pattern);
    r = automata::dfa_run(automata::build_substring_dfa(pattern, sigma), input);
  }
  out << automata::to_string(r.verdict) << "\nfinal_state " << r.final_state << "\n";
  return 0;
}

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string store = "vfk-store";
  std::string static_dir;
};

int run_serve(const ServeOptions& o, std::ostream& out) {
  Api api(o.store);
  HttpServer server(api, o.static_dir.empty() ? std::nullopt : std::optional<std::filesystem::path>(o.static_dir));
  const int port = server.bind(o.host, o.port);
  out << "listening on http://" << o.host << ":" << port << " (store " << o.store << ")" << std::endl;
  server.listen();
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"vfk: kymogram synthesis, snake deformation and computability utilities"};
  app.require_subcommand(1);

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a vibration string and render its kymogram");
  synth_cmd->add_option("--preset", synth.preset, "habitual | high | breathy | falsetto");
  synth_cmd->add_option("--i", synth.i, "closed-phase run length");
  synth_cmd->add_option("--j", synth.j, "opening-phase run length");
  synth_cmd->add_option("--k", synth.k, "closing-phase run length");
  synth_cmd->add_option("--c", synth.c, "proportionality constants c1,c2,c3")->delimiter(',')->expected(3);
  synth_cmd->add_option("--eps", synth.eps, "relative tolerance of the proportionality test");
  synth_cmd->add_option("--periods", synth.periods, "number of vibration cycles");
  synth_cmd->add_option("--amplitude", synth.amplitude, "maximum half-width in pixels");
  synth_cmd->add_option("--w-min", synth.w_min, "residual half-width");
  synth_cmd->add_option("--jitter", synth.jitter, "max per-cycle run-length perturbation");
  synth_cmd->add_option("--noise", synth.noise, "uniform noise amplitude");
  synth_cmd->add_option("--height", synth.height, "image rows");
  synth_cmd->add_option("--edge-intensity", synth.edge_intensity, "edge brightness");
  synth_cmd->add_option("--seed", synth.seed, "PRNG seed")->required();
  synth_cmd->add_option("-o,--output", synth.output, "output PGM")->required();
  synth_cmd->add_option("--emit-string", synth.emit_string, "also write the vibration string here");
  synth_cmd->add_option("--truth", synth.truth, "ground-truth sidecar (default <output>.truth.json)");
  synth_cmd->add_flag("--ascii", synth.ascii, "write P2 instead of P5");

  DecideOptions decide;
  auto* decide_cmd = app.add_subcommand("decide", "Decide membership of a vibration string");
  auto* string_opt = decide_cmd->add_option("--string", decide.string_file, "vibration string file");
  auto* text_opt = decide_cmd->add_option("--text", decide.text, "vibration string given inline");
  string_opt->excludes(text_opt);
  decide_cmd->add_option("--c", decide.c, "proportionality constants c1,c2,c3")->delimiter(',')->expected(3);
  decide_cmd->add_option("--eps", decide.eps, "relative tolerance");
  decide_cmd->add_flag("--json", decide.as_json, "print the full decision as JSON");

  DeformOptions deform;
  auto* deform_cmd = app.add_subcommand("deform", "Deform snakes on a PGM image");
  deform_cmd->add_option("--image", deform.image, "input PGM")->required();
  deform_cmd->add_option("--alpha", deform.alpha, "continuity weight");
  deform_cmd->add_option("--beta", deform.beta, "rigidity weight");
  deform_cmd->add_option("--gamma", deform.gamma, "image weight");
  deform_cmd->add_option("--rigidity", deform.rigidity, "classical | as-printed");
  deform_cmd->add_option("--params", deform.params_file, "parameter JSON (per-snaxel arrays allowed)");
  deform_cmd->add_option("--snake", deform.snake_file, "initial snake JSON; omit for a midline pair");
  deform_cmd->add_option("--constraints", deform.constraints_file, "hard-constraint JSON");
  deform_cmd->add_option("--min-spacing", deform.min_spacing);
  deform_cmd->add_option("--max-spacing", deform.max_spacing);
  deform_cmd->add_flag("--column-locked", deform.column_locked);
  deform_cmd->add_option("--stride", deform.stride);
  deform_cmd->add_option("--midline", deform.midline, "midline row (default: estimated)");
  deform_cmd->add_option("--band-halfwidth", deform.band_halfwidth, "band half-width (default: largest fitting)");
  deform_cmd->add_option("--max-iter", deform.max_iter);
  deform_cmd->add_flag("--step", deform.step, "exactly one DP iteration");
  deform_cmd->add_option("--window", deform.window, "move-window radius");
  deform_cmd->add_option("--field", deform.field, "intensity | gradient");
  deform_cmd->add_option("-o,--output", deform.output, "write the result JSON here");

  DfaOptions dfa;
  auto* dfa_cmd = app.add_subcommand("dfa", "Build and run a substring DFA");
  dfa_cmd->add_option("--pattern", dfa.pattern);
  dfa_cmd->add_option("--alphabet", dfa.alphabet, "default: printable ASCII plus the pattern symbols");
  dfa_cmd->add_option("--input", dfa.input);
  dfa_cmd->add_option("--input-file", dfa.input_file);
  dfa_cmd->add_option("--encoded", dfa.encoded_file, "simulate this encoded DFA instead");
  dfa_cmd->add_flag("--encode", dfa.encode, "print the encoded DFA and exit");

  auto* pair_cmd = app.add_subcommand("pair", "Cantor pairing");
  pair_cmd->require_subcommand(1);
  std::vector<std::string> pair_args;
  auto* pair_encode = pair_cmd->add_subcommand("encode", "pair a b");
  pair_encode->add_option("args", pair_args)->required()->expected(2);
  auto* pair_decode = pair_cmd->add_subcommand("decode", "unpair n");
  pair_decode->add_option("args", pair_args)->required()->expected(1);
  auto* pair_triple = pair_cmd->add_subcommand("triple", "triple a b c");
  pair_triple->add_option("args", pair_args)->required()->expected(3);
  auto* pair_untriple = pair_cmd->add_subcommand("untriple", "untriple n");
  pair_untriple->add_option("args", pair_args)->required()->expected(1);

  auto* rank_cmd = app.add_subcommand("rank", "Shortlex string ranking");
  rank_cmd->require_subcommand(1);
  std::string rank_alphabet = "01";
  std::string rank_value;
  auto* rank_encode = rank_cmd->add_subcommand("encode", "string -> rank");
  rank_encode->add_option("--alphabet", rank_alphabet);
  rank_encode->add_option("word", rank_value, "omit for the empty string");
  auto* rank_decode = rank_cmd->add_subcommand("decode", "rank -> string");
  rank_decode->add_option("--alphabet", rank_alphabet);
  rank_decode->add_option("rank", rank_value)->required();

  auto* rational_cmd = app.add_subcommand("rational", "Enumeration of the non-negative rationals");
  rational_cmd->require_subcommand(1);
  std::string rational_value;
  auto* rational_encode = rational_cmd->add_subcommand("encode", "m/n -> rank");
  rational_encode->add_option("fraction", rational_value)->required();
  auto* rational_decode = rational_cmd->add_subcommand("decode", "rank -> m/n");
  rational_decode->add_option("rank", rational_value)->required();

  ServeOptions serve;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--host", serve.host);
  serve_cmd->add_option("--port", serve.port);
  serve_cmd->add_option("--store", serve.store, "session directory");
  serve_cmd->add_option("--static", serve.static_dir, "serve this directory at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return 2;
  }

  try {
    if (*synth_cmd) return run_synth(synth, out);
    if (*decide_cmd) {
      if (decide.string_file.empty() && !decide.text) {
        err << "decide: one of --string or --text is required\n" << decide_cmd->help();
        return 2;
      }
      return run_decide(decide, out);
    }
    if (*deform_cmd) return run_deform(deform, out);
    if (*dfa_cmd) return run_dfa(dfa, out);
    if (*pair_cmd) {
      std::vector<bijections::Natural> n;
      for (const auto& a : pair_args) n.push_back(bijections::parse_natural(a));
      using bijections::to_decimal;
      if (*pair_encode) out << to_decimal(bijections::pair(n[0], n[1])) << "\n";
      if (*pair_decode) {
        const auto [a, b] = bijections::unpair(n[0]);
        out << to_decimal(a) << " " << to_decimal(b) << "\n";
      }
      if (*pair_triple) out << to_decimal(bijections::triple(n[0], n[1], n[2])) << "\n";
      if (*pair_untriple) {
        const auto [a, b, c] = bijections::untriple(n[0]);
        out << to_decimal(a) << " " << to_decimal(b) << " " << to_decimal(c) << "\n";
      }
      return 0;
    }
    if (*rank_cmd) {
      const std::u32string alphabet = utf8::decode(rank_alphabet);
      if (*rank_encode) {
        out << bijections::to_decimal(bijections::string_rank(utf8::decode(rank_value), alphabet)) << "\n";
      } else {
        out << utf8::encode(bijections::string_unrank(bijections::parse_natural(rank_value), alphabet)) << "\n";
      }
      return 0;
    }
    if (*rational_cmd) {
      if (*rational_encode) {
        out << bijections::to_decimal(bijections::rational_rank(bijections::ReducedFraction::parse(rational_value)))
            << "\n";
      } else {
        out << bijections::rational_unrank(bijections::parse_natural(rational_value)).str() << "\n";
      }
      return 0;
    }
    if (*serve_cmd) return run_serve(serve, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace vfk::service
