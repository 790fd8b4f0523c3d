#include "cli.hpp"

#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "spreadnet/io.hpp"
#include "spreadnet/oracle.hpp"

namespace spreadnet {

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kParse = 2;
constexpr int kUnsaturated = 3;

int code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::ParseError:
    case ErrorCode::MalformedMode:
    case ErrorCode::InvalidNet:
      return kParse;
    default:
      return kInvalid;
  }
}

McNet load_valid_net(const std::string& path, std::ostream& err, bool& ok) {
  McNet mc = parse_net(read_file(path));
  const auto verdict = validate_mcnet(mc);
  ok = verdict.ok();
  if (!ok) err << verdict.to_string();
  return mc;
}

}  // namespace

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spread multi-clock Petri nets over ticking domains"};
  app.require_subcommand(1);

  std::string net_path, mode_path, out_path, dot_path, against;
  std::size_t depth = 0;
  bool require_saturation = false;

  auto* validate = app.add_subcommand("validate", "Check that a net file is a valid mc-net");
  validate->add_option("--net", net_path, "Net file")->required();

  auto* spread_cmd = app.add_subcommand("spread", "Spread a net with a mode");
  spread_cmd->add_option("--net", net_path, "Net file")->required();
  spread_cmd->add_option("--mode", mode_path, "Mode file")->required();
  spread_cmd->add_option("--out", out_path, "Spread file to write")->required();
  spread_cmd->add_option("--dot", dot_path, "Graphviz file to write");
  spread_cmd->add_flag("--require-saturation", require_saturation,
                       "Exit 3 when a bound stopped the spreading");

  auto* unfold = app.add_subcommand("unfold-bp", "Reference branching-process prefix");
  unfold->add_option("--net", net_path, "Net file")->required();
  unfold->add_option("--depth", depth, "Causal depth")->required();
  unfold->add_option("--out", out_path, "Output net file")->required();

  auto* trellis = app.add_subcommand("trellis", "Reference trellis prefix");
  trellis->add_option("--net", net_path, "Net file")->required();
  trellis->add_option("--height", depth, "Local-time height")->required();
  trellis->add_option("--out", out_path, "Output net file")->required();

  auto* compare = app.add_subcommand("compare", "Compare a spreading with a reference prefix");
  compare->add_option("--net", net_path, "Net file")->required();
  compare->add_option("--mode", mode_path, "Mode file")->required();
  compare->add_option("--against", against, "Reference construction")
      ->required()
      ->check(CLI::IsMember({"bp", "trellis"}));
  compare->add_option("--depth", depth, "Depth or height for both sides")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParse;
  }

  try {
    bool ok = false;
    const McNet mc = load_valid_net(net_path, err, ok);
    if (!ok) return kInvalid;

    if (*validate) {
      out << "valid mc-net: " << mc.net().places().size() << " places, "
          << mc.net().transitions().size() << " transitions, " << mc.dimension()
          << " components\n";
      return kOk;
    }

    if (*spread_cmd) {
      const auto mode = parse_mode(read_file(mode_path));
      const auto result = spread_with_mode(mc, mode);
      write_file(out_path, emit_spread(SpreadFile::from(result)));
      if (!dot_path.empty()) write_file(dot_path, emit_dot(result.net));
      out << result.net.support().places().size() << " places, "
          << result.net.support().transitions().size() << " transitions, "
          << (result.saturated ? "saturated" : "not saturated") << "\n";
      return require_saturation && !result.saturated ? kUnsaturated : kOk;
    }

    if (*unfold) {
      write_file(out_path, emit_labeled_net(unfold_bp_oracle(mc, depth)));
      return kOk;
    }

    if (*trellis) {
      write_file(out_path, emit_labeled_net(trellis_oracle(mc, depth)));
      return kOk;
    }

    if (*compare) {
      auto mode = parse_mode(read_file(mode_path));
      mode.max_depth = depth;
      const auto result = spread_with_mode(mc, mode);
      const Net reference = against == "bp" ? unfold_bp_oracle(mc, depth) : trellis_oracle(mc, depth);
      const auto iso = isomorphic(result.net.support(), reference);
      if (!iso) {
        err << "not isomorphic: " << first_discrepancy(result.net.support(), reference) << "\n";
        return kInvalid;
      }
      nlohmann::json witness{{"places", iso->places}, {"transitions", iso->transitions}};
      out << witness.dump(2) << "\n";
      return kOk;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return code_for(e);
  }
  return kParse;
}

}  // namespace spreadnet
