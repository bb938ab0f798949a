// gfpe: command-line front end over the gfpe library.
//
// Exit status: 0 on success, 1 on a data error, 2 on a usage error. Errors
// are reported as one line on stderr: "error: <Code>: <detail>".

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <gfpe/gfpe.hpp>

namespace {

using namespace gfpe;

struct UsageError : std::runtime_error {
   using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
   std::ifstream in(path, std::ios::binary);
   if(!in) {
      throw Error(ErrorCode::Io, "cannot read " + path);
   }
   std::ostringstream s;
   s << in.rdbuf();
   return s.str();
}

// Runs fn with a stream for path, or stdout when path is empty or "-".
template <class Fn>
void with_output(const std::string& path, Fn fn) {
   if(path.empty() || path == "-") {
      fn(std::cout);
      std::cout.flush();
      return;
   }
   std::ofstream out(path, std::ios::binary);
   if(!out) {
      throw Error(ErrorCode::Io, "cannot write " + path);
   }
   fn(out);
   if(!out.flush()) {
      throw Error(ErrorCode::Io, "write failed: " + path);
   }
}

MaxSize max_size_flag(const std::string& text) {
   try {
      return parse_max_size(text);
   } catch(const Error& e) {
      throw UsageError(std::string("--max-size: ") + e.what());
   }
}

// Applies fn to --value if given, else to each stdin line. Errors on stdin
// input name the line.
template <class Fn>
void each_value(const std::optional<std::string>& value, Fn fn) {
   if(value) {
      std::cout << fn(*value) << '\n';
      return;
   }
   std::string line;
   std::size_t number = 0;
   while(std::getline(std::cin, line)) {
      ++number;
      if(!line.empty() && line.back() == '\r') {
         line.pop_back();
      }
      try {
         std::cout << fn(line) << '\n';
      } catch(const Error& e) {
         std::string detail = e.what();
         detail.erase(0, to_string(e.code()).size() + 2);
         throw Error(e.code(), "line=" + std::to_string(number) + " " + detail);
      }
   }
}

struct Options {
   std::string format;
   std::string simplified;
   std::string key;
   std::string max_size = "inf";
   unsigned rounds = 12;
   unsigned bits = 256;
   std::string out;
   std::string in;
   std::string map;
   std::string dataset;
   std::string column;
   std::string scheme = "gfpe";
   std::string tweak;
   std::optional<std::string> value;
   std::optional<std::string> rank;
   bool column_tweak = false;
   bool canonical = false;
   unsigned threads = 0;
   std::uint64_t trials = 10000;
   std::uint64_t seed = 1;
   std::size_t count = 10000;
   std::size_t word_letters = 15;
};

CipherConfig cipher_config(const Options& o) {
   CipherConfig c;
   c.max_size = max_size_flag(o.max_size);
   c.rounds = o.rounds;
   return c;
}

std::span<const std::uint8_t> bytes_of(const std::string& s) {
   return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

int run_keygen(const Options& o) {
   if(o.bits != 128 && o.bits != 256) {
      throw UsageError("--bits must be 128 or 256");
   }
   const auto key = keygen(o.bits);
   if(o.out.empty() || o.out == "-") {
      std::cout << key_to_hex(key) << '\n';
   } else {
      save_key(key, o.out);
   }
   return 0;
}

int run_validate(const Options& o) {
   const FormatSpec spec = load_spec(o.format);
   const Validation v = validate(spec);
   if(!v) {
      for(const auto& violation : v.violations) {
         std::cerr << "error: " << to_string(violation.code) << ": " << violation.path << " " << violation.message << '\n';
      }
      return 1;
   }
   std::cout << to_string(v.format->size()) << '\n';
   if(o.canonical) {
      std::cout << serialize_spec(spec);
   }
   return 0;
}

int run_rank(const Options& o) {
   const Format f = load_format(o.format);
   each_value(o.value, [&](const std::string& v) { return to_string(rank(f, v).value); });
   return 0;
}

int run_unrank(const Options& o) {
   const Format f = load_format(o.format);
   each_value(o.rank, [&](const std::string& r) { return unrank(f, parse_bigint(r)); });
   return 0;
}

int run_cipher(const Options& o, bool forward) {
   const Cipher cipher(load_format(o.format), load_key(o.key, o.rounds), cipher_config(o));
   each_value(o.value, [&](const std::string& v) {
      return forward ? cipher.encrypt(v, bytes_of(o.tweak)) : cipher.decrypt(v, bytes_of(o.tweak));
   });
   return 0;
}

int run_csv(const Options& o, Direction direction) {
   const auto columns = load_format_map(o.map);
   const auto key = load_key(o.key, o.rounds);
   CsvOptions options;
   options.cipher = cipher_config(o);
   options.column_tweak = o.column_tweak;
   options.threads = o.threads;
   const std::string result = transform_csv(read_file(o.in), columns, key, options, direction);
   with_output(o.out, [&](std::ostream& out) { out << result; });
   return 0;
}

int run_analyze(const Options& o) {
   const auto records = read_csv_column(read_file(o.dataset), o.column);
   IdentificationCurve curve;
   if(o.scheme == "sgfpe") {
      curve = sgfpe_curve(records);
   } else if(o.scheme == "gfpe") {
      const Format f = o.format.empty() ? compile(catalog::address(o.word_letters)) : load_format(o.format);
      curve = gfpe_curve(records, split(f, max_size_flag(o.max_size)));
   } else {
      throw UsageError("--scheme must be sgfpe or gfpe");
   }
   with_output(o.out, [&](std::ostream& out) { write_curve_csv(curve, out); });
   return 0;
}

int run_bench(const Options& o) {
   const Format f = load_format(o.format);
   const Format sf = load_format(o.simplified);
   const auto key = o.key.empty() ? keygen() : load_key(o.key, o.rounds);
   const auto report = expansion_and_cycles(f, sf, o.trials, key, o.seed);
   with_output(o.out, [&](std::ostream& out) { write_bench_csv(report, out); });
   return 0;
}

int run_synth(const Options& o) {
   const auto records = synth_addresses(o.count, o.seed, o.word_letters);
   with_output(o.out, [&](std::ostream& out) {
      out << "address\n";
      for(const auto& r : records) {
         out << csv_field(r) << '\n';
      }
   });
   return 0;
}

}  // namespace

int main(int argc, char** argv) {
   CLI::App app{"Format-preserving encryption for general formats"};
   app.require_subcommand(1);
   Options o;

   auto* keygen_cmd = app.add_subcommand("keygen", "Write a fresh random key as hex");
   keygen_cmd->add_option("--bits", o.bits, "Key size: 128 or 256")->capture_default_str();
   keygen_cmd->add_option("--out", o.out, "Key file (default stdout)");

   auto* validate_cmd = app.add_subcommand("validate", "Check a format file and print its size");
   validate_cmd->add_option("--format", o.format, "Format file")->required();
   validate_cmd->add_flag("--canonical", o.canonical, "Also print the canonical form");

   auto* rank_cmd = app.add_subcommand("rank", "Rank values (--value or one per stdin line)");
   rank_cmd->add_option("--format", o.format, "Format file")->required();
   rank_cmd->add_option("--value", o.value, "Value to rank");

   auto* unrank_cmd = app.add_subcommand("unrank", "Unrank ranks (--rank or one per stdin line)");
   unrank_cmd->add_option("--format", o.format, "Format file")->required();
   unrank_cmd->add_option("--rank", o.rank, "Rank to unrank");

   auto add_cipher_flags = [&](CLI::App* cmd) {
      cmd->add_option("--key", o.key, "Hex key file")->required();
      cmd->add_option("--max-size", o.max_size, "Largest integer-FPE domain: decimal, 2^k or inf")->capture_default_str();
      cmd->add_option("--rounds", o.rounds, "Feistel rounds")->capture_default_str();
   };
   CLI::App* value_cmds[2];
   for(int i = 0; i < 2; ++i) {
      auto* cmd = app.add_subcommand(i == 0 ? "encrypt" : "decrypt",
                                     i == 0 ? "Encrypt values (--value or one per stdin line)"
                                            : "Decrypt values (--value or one per stdin line)");
      cmd->add_option("--format", o.format, "Format file")->required();
      add_cipher_flags(cmd);
      cmd->add_option("--value", o.value, "Value");
      cmd->add_option("--tweak", o.tweak, "Tweak string");
      value_cmds[i] = cmd;
   }
   CLI::App* csv_cmds[2];
   for(int i = 0; i < 2; ++i) {
      auto* cmd = app.add_subcommand(i == 0 ? "encrypt-csv" : "decrypt-csv",
                                     i == 0 ? "Encrypt mapped CSV columns" : "Decrypt mapped CSV columns");
      cmd->add_option("--format-map", o.map, "Lines of column<TAB>format-file")->required();
      add_cipher_flags(cmd);
      cmd->add_option("--in", o.in, "Input CSV with header")->required();
      cmd->add_option("--out", o.out, "Output CSV (default stdout)");
      cmd->add_flag("--column-tweak", o.column_tweak, "Bind each column's ciphertexts to its name");
      cmd->add_option("--threads", o.threads, "Worker threads (0: all cores)");
      csv_cmds[i] = cmd;
   }

   auto* analyze_cmd = app.add_subcommand("analyze", "Identification curve of a dataset under SGFPE or GFPE");
   analyze_cmd->add_option("--dataset", o.dataset, "CSV with header")->required();
   analyze_cmd->add_option("--column", o.column, "Column to analyze (default first)");
   analyze_cmd->add_option("--scheme", o.scheme, "sgfpe or gfpe")->capture_default_str();
   analyze_cmd->add_option("--max-size", o.max_size, "maxS for gfpe")->capture_default_str();
   analyze_cmd->add_option("--format", o.format, "Format for gfpe (default: the built-in address format)");
   analyze_cmd->add_option("--word-letters", o.word_letters, "Address word length")->capture_default_str();
   analyze_cmd->add_option("--out", o.out, "Curve CSV (default stdout)");

   auto* bench_cmd = app.add_subcommand("bench", "Expansion and cycle-walking cost of a simplified format");
   bench_cmd->add_option("--format", o.format, "Original format file")->required();
   bench_cmd->add_option("--simplified", o.simplified, "Simplified superset format file")->required();
   bench_cmd->add_option("--trials", o.trials, "Encryptions")->capture_default_str();
   bench_cmd->add_option("--seed", o.seed, "Sampling seed")->capture_default_str();
   bench_cmd->add_option("--key", o.key, "Hex key file (default: fresh key)");
   bench_cmd->add_option("--out", o.out, "Report CSV (default stdout)");

   auto* synth_cmd = app.add_subcommand("synth", "Synthetic address dataset");
   synth_cmd->add_option("--count", o.count, "Records")->capture_default_str();
   synth_cmd->add_option("--seed", o.seed, "Seed")->capture_default_str();
   synth_cmd->add_option("--word-letters", o.word_letters, "Maximum letters after a word's capital")->capture_default_str();
   synth_cmd->add_option("--out", o.out, "CSV (default stdout)");

   try {
      app.parse(argc, argv);
   } catch(const CLI::CallForHelp& e) {
      return app.exit(e);
   } catch(const CLI::CallForAllHelp& e) {
      return app.exit(e);
   } catch(const CLI::ParseError& e) {
      std::cerr << "error: Usage: " << e.what() << '\n';
      return 2;
   }

   try {
      if(keygen_cmd->parsed()) return run_keygen(o);
      if(validate_cmd->parsed()) return run_validate(o);
      if(rank_cmd->parsed()) return run_rank(o);
      if(unrank_cmd->parsed()) return run_unrank(o);
      if(value_cmds[0]->parsed()) return run_cipher(o, true);
      if(value_cmds[1]->parsed()) return run_cipher(o, false);
      if(csv_cmds[0]->parsed()) return run_csv(o, Direction::encrypt);
      if(csv_cmds[1]->parsed()) return run_csv(o, Direction::decrypt);
      if(analyze_cmd->parsed()) return run_analyze(o);
      if(bench_cmd->parsed()) return run_bench(o);
      if(synth_cmd->parsed()) return run_synth(o);
   } catch(const UsageError& e) {
      std::cerr << "error: Usage: " << e.what() << '\n';
      return 2;
   } catch(const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 1;
   }
   return 2;
}
