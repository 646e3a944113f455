#include "rlnc_das/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "rlnc_das/analysis.hpp"
#include "rlnc_das/sim.hpp"

namespace rlnc_das::cli {
namespace {

ByteSpan as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

SamplingMode parse_mode(std::string_view name) {
  if (name == "interactive") return SamplingMode::Interactive;
  if (name == "fs") return SamplingMode::FiatShamir;
  fail(ErrorCode::ConfigError, "unknown mode '" + std::string(name) + "' (interactive|fs)");
}

struct Options {
  // protocol
  std::string in, out, commitments, challenge, response, projections, proof, projections_for;
  std::size_t m = 16, n = 0, p = 4;
  std::string field = "crypto", mode = "interactive", seed = "0", adversary;
  // costs
  std::string figure, format = "csv", accounting = "field";
  double target = 1e-9;
  std::uint64_t data_mib = 32;
  // simulate
  std::string spec_file, kind = "withholding";
  std::uint64_t q = 17, trials = 10000, sim_seed = 0;
  std::size_t l = 1, s = 1, constraints = 1;
  unsigned threads = 0;
  bool exhaustive = false, protocol_path = false;
};

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  write_file(o.out, as_bytes(text));
}

/// The challenge a verifier derives from --seed.
Challenge challenge_from_file(const Field& f, const std::string& path) {
  const Bytes body = unwrap_file(read_file(path), FileType::Challenge);
  const auto frames = read_frames(body);
  require(frames.size() == 1 && frames[0].tag == wire::MessageTag::Challenge, ErrorCode::MalformedFile,
          "challenge file must hold one challenge frame");
  try {
    return wire::decode_challenge(f, frames[0].body);
  } catch (const Error& e) {
    throw Error(ErrorCode::MalformedFile, e.what());
  }
}

Bytes projection_seed(const std::string& seed) { return Bytes(seed.begin(), seed.end()); }

std::unique_ptr<Claimer> make_claimer(const std::string& adversary, ScalarMatrix data) {
  if (adversary.empty() || adversary == "honest") return std::make_unique<HonestClaimer>(std::move(data));
  const auto colon = adversary.find(':');
  const std::string kind = adversary.substr(0, colon);
  const std::string seed = colon == std::string::npos ? "0" : adversary.substr(colon + 1);
  if (kind == "withhold") return std::make_unique<WithholdingClaimer>(WithholdingClaimer::from_seed(std::move(data), as_bytes(seed)));
  if (kind == "inconsistent")
    return std::make_unique<InconsistentClaimer>(InconsistentClaimer::from_seed(std::move(data), as_bytes(seed)));
  fail(ErrorCode::ConfigError, "unknown adversary '" + adversary + "' (withhold:<seed>|inconsistent:<seed>)");
}

int cmd_commit(const Options& o, std::ostream& out) {
  const FieldId field = parse_field_id(o.field);
  const SamplingMode mode = parse_mode(o.mode);
  require(o.m >= 1 && o.p >= 1, ErrorCode::ConfigError, "--m and --p must be >= 1");
  const Bytes data = read_file(o.in);
  const std::size_t n = o.n ? o.n : default_columns(field, data.size(), o.m);
  CommitmentsFile file{field,
                       mode,
                       static_cast<std::uint32_t>(o.m),
                       static_cast<std::uint32_t>(n),
                       static_cast<std::uint32_t>(o.p),
                       data.size(),
                       {}};
  const ProtocolParams params = file.params();
  file.commitments = producer_commit(pack_data(field, data, o.m, n), params);
  const Bytes encoded = file.encode();
  write_file(o.out, encoded);
  out << "matrix: " << o.m << " x " << n << " over " << params.field().name() << '\n';
  out << "commitments: " << o.m * params.group.element_bytes() << " bytes\n";
  out << "wrote " << o.out << " (" << encoded.size() << " bytes)\n";
  return 0;
}

int cmd_challenge(const Options& o, std::ostream& out) {
  const CommitmentsFile coms = CommitmentsFile::decode(read_file(o.commitments));
  const ProtocolParams params = coms.params();
  if (!o.projections_for.empty()) {
    require(coms.mode == SamplingMode::Interactive, ErrorCode::ConfigError,
            "projections are only exchanged in interactive mode");
    // The claimer must have answered before the projections are drawn.
    const auto frames = read_frames(unwrap_file(read_file(o.projections_for), FileType::Response));
    require(!frames.empty() && frames[0].tag == wire::MessageTag::Response, ErrorCode::ConfigError,
            "no coded vector to project: the claimer refused");
    const ProjectionSet set = verifier_make_projections(projection_seed(o.seed + "/projections"), params);
    write_file(o.out, wrap_file(FileType::Projections,
                                wire::frame(wire::MessageTag::Projections, wire::encode_projections(set))));
    out << "projections: " << set.size() << " vectors in F^" << params.m << '\n';
    return 0;
  }
  const Challenge c = verifier_make_challenge(as_bytes(o.seed), params.field(), params.n);
  write_file(o.out, wrap_file(FileType::Challenge, wire::frame(wire::MessageTag::Challenge, wire::encode_challenge(c))));
  out << "challenge: " << params.n << " coefficients (seeded)\n";
  return 0;
}

int cmd_respond(const Options& o, std::ostream& out) {
  const CommitmentsFile coms = CommitmentsFile::decode(read_file(o.commitments));
  const ProtocolParams params = coms.params();
  const Bytes data = read_file(o.in);
  require(data.size() == coms.data_length, ErrorCode::DimensionMismatch,
          "data file is " + std::to_string(data.size()) + " bytes, commitments cover " +
              std::to_string(coms.data_length));
  const auto claimer = make_claimer(o.adversary, pack_data(coms.field, data, coms.m, coms.n));
  const Challenge challenge = challenge_from_file(params.field(), o.challenge);
  const std::optional<ScalarVector> response = claimer->respond(challenge);

  if (!o.projections.empty()) {
    require(coms.mode == SamplingMode::Interactive, ErrorCode::ConfigError, "--projections needs interactive mode");
    require(response.has_value(), ErrorCode::ConfigError, "claimer refused this challenge");
    const auto frames = read_frames(unwrap_file(read_file(o.projections), FileType::Projections));
    require(frames.size() == 1 && frames[0].tag == wire::MessageTag::Projections, ErrorCode::MalformedFile,
            "projections file must hold one projections frame");
    ProjectionSet set;
    try {
      set = wire::decode_projections(params.field(), frames[0].body);
    } catch (const Error& e) {
      throw Error(ErrorCode::MalformedFile, e.what());
    }
    const MembershipProof proof = claimer->prove(params, coms.commitments, challenge, *response, set);
    write_file(o.out, wrap_file(FileType::Proof, wire::frame(wire::MessageTag::Proof, wire::encode_proof(params.group, proof))));
    out << "proof: " << proof.size() << " inner product arguments\n";
    return 0;
  }

  ByteWriter body;
  if (!response) {
    body.put_bytes(wire::frame(wire::MessageTag::Refuse, {}));
    out << "response: refused\n";
  } else {
    body.put_bytes(wire::frame(wire::MessageTag::Response, wire::encode_response(*response)));
    out << "response: " << response->size() << " field elements\n";
    if (coms.mode == SamplingMode::FiatShamir) {
      const ProjectionSet set = derive_projections(params, coms.commitments, challenge, *response);
      const MembershipProof proof = claimer->prove(params, coms.commitments, challenge, *response, set);
      body.put_bytes(wire::frame(wire::MessageTag::Proof, wire::encode_proof(params.group, proof)));
      out << "proof: " << proof.size() << " inner product arguments\n";
    }
  }
  write_file(o.out, wrap_file(FileType::Response, body.bytes()));
  return 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const CommitmentsFile coms = CommitmentsFile::decode(read_file(o.commitments));
  const ProtocolParams params = coms.params();
  const Field& f = params.field();
  const Challenge challenge = challenge_from_file(f, o.challenge);
  const auto frames = read_frames(unwrap_file(read_file(o.response), FileType::Response));
  require(!frames.empty(), ErrorCode::MalformedFile, "empty response file");

  auto report = [&out](const VerifierVerdict& v) {
    out << "verdict: " << (v.accepted ? "available" : "unavailable") << '\n';
    if (v.response_missing) out << "reason: claimer refused the challenge\n";
    else if (v.failed_projection_index) out << "reason: argument " << *v.failed_projection_index << " rejected\n";
    return v.accepted ? 0 : 1;
  };

  if (frames[0].tag == wire::MessageTag::Refuse) {
    require(frames.size() == 1, ErrorCode::MalformedFile, "trailing frames after refusal");
    return report(VerifierVerdict{false, std::nullopt, 0, true});
  }
  require(frames[0].tag == wire::MessageTag::Response, ErrorCode::MalformedFile, "expected a response frame");

  ScalarVector response = ScalarVector::zeros(f, 0);
  ProjectionSet projections;
  MembershipProof proof;
  try {
    response = wire::decode_response(f, frames[0].body);
    if (coms.mode == SamplingMode::FiatShamir) {
      require(frames.size() == 2 && frames[1].tag == wire::MessageTag::Proof, ErrorCode::MalformedFile,
              "Fiat-Shamir response must carry a proof frame");
      proof = wire::decode_proof(params.group, frames[1].body);
      projections = derive_projections(params, coms.commitments, challenge, response);
    } else {
      require(frames.size() == 1, ErrorCode::MalformedFile, "unexpected frames in response");
      require(!o.projections.empty() && !o.proof.empty(), ErrorCode::ConfigError,
              "interactive mode needs --projections and --proof");
      const auto pf = read_frames(unwrap_file(read_file(o.projections), FileType::Projections));
      require(pf.size() == 1 && pf[0].tag == wire::MessageTag::Projections, ErrorCode::MalformedFile,
              "bad projections file");
      projections = wire::decode_projections(f, pf[0].body);
      const auto prf = read_frames(unwrap_file(read_file(o.proof), FileType::Proof));
      require(prf.size() == 1 && prf[0].tag == wire::MessageTag::Proof, ErrorCode::MalformedFile, "bad proof file");
      proof = wire::decode_proof(params.group, prf[0].body);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::MalformedFile || e.code() == ErrorCode::ConfigError || e.code() == ErrorCode::IoError)
      throw;
    throw Error(ErrorCode::MalformedFile, e.what());
  }
  return report(verifier_verify(params, coms.commitments, challenge, response, projections, proof));
}

int cmd_costs(const Options& o, std::ostream& out) {
  using namespace analysis;
  if (o.figure == "table2") {
    require(o.data_mib >= 1, ErrorCode::ConfigError, "--data-mib must be >= 1");
    RlncScheme rlnc;
    rlnc.m = o.m;
    rlnc.p = o.p;
    if (o.accounting == "group") rlnc.accounting = CodedVectorAccounting::GroupElements;
    else require(o.accounting == "field", ErrorCode::ConfigError, "--accounting must be field|group");
    const std::uint64_t d = o.data_mib * kMiB;
    const std::vector<CostReport> reports = {cost_rs_mt(d, {}, o.target), cost_rs_kzg(d, {}, o.target),
                                             cost_cmt(d, {}, o.target), cost_rlnc(d, rlnc, o.target)};
    if (o.format == "json") {
      std::string text = "[";
      for (std::size_t i = 0; i < reports.size(); ++i) text += (i ? "," : "") + reports[i].to_json();
      emit(o, text + "]\n", out);
    } else {
      require(o.format == "csv", ErrorCode::ConfigError, "--format must be csv|json");
      emit(o, comparison_table_rows(reports).to_csv(), out);
    }
    return 0;
  }
  FigureConfig config;
  config.target = o.target;
  if (o.figure == "fig3") {
    emit(o, figure_data(Figure::Fig3, config).to_csv(), out);
  } else if (o.figure == "fig4_sampling") {
    emit(o, figure_data(Figure::Fig4Sampling, config).to_csv(), out);
  } else if (o.figure == "fig4_commitment") {
    emit(o, figure_data(Figure::Fig4Commitment, config).to_csv(), out);
  } else if (o.figure == "fig4") {
    // Both panels in one table, told apart by the first column.
    Table both;
    for (auto [fig, name] : {std::pair{Figure::Fig4Sampling, "sampling"}, std::pair{Figure::Fig4Commitment, "commitment"}}) {
      Table t = figure_data(fig, config);
      if (both.header.empty()) {
        both.header = t.header;
        both.header.insert(both.header.begin(), "metric");
      }
      for (auto& row : t.rows) {
        row.insert(row.begin(), name);
        both.rows.push_back(std::move(row));
      }
    }
    emit(o, both.to_csv(), out);
  } else {
    fail(ErrorCode::ConfigError, "unknown figure '" + o.figure + "' (fig3|fig4|fig4_sampling|fig4_commitment|table2)");
  }
  return 0;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  std::vector<sim::ExperimentSpec> specs;
  if (!o.spec_file.empty()) {
    const Bytes text = read_file(o.spec_file);
    specs = sim::parse_specs({reinterpret_cast<const char*>(text.data()), text.size()});
  } else {
    sim::ExperimentSpec s;
    s.kind = sim::parse_kind(o.kind);
    s.q = o.q;
    s.m = o.m;
    s.n = o.n ? o.n : 4;
    s.l = o.l;
    s.s = o.s;
    s.p = o.p;
    s.trials = o.trials;
    s.master_seed = o.sim_seed;
    s.exhaustive = o.exhaustive;
    s.protocol_path = o.protocol_path;
    s.constraints = o.constraints;
    specs.push_back(s);
  }
  std::vector<sim::ExperimentResult> results;
  for (auto& s : specs) {
    if (o.threads) s.threads = o.threads;
    results.push_back(sim::run(s));
  }
  emit(o, sim::to_csv(results), out);
  const bool all_in_band = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.within_3sigma; });
  return all_in_band ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Data availability sampling with random linear network coding", "rlnc-das"};
  app.require_subcommand(1);
  Options o;

  auto protocol_flags = [&o](CLI::App* c) {
    c->add_option("--m", o.m, "rows of the data matrix");
    c->add_option("--n", o.n, "columns (default: fit the data)");
    c->add_option("--p", o.p, "projections per sample");
    c->add_option("--field", o.field, "test17|test257|crypto");
    c->add_option("--mode", o.mode, "interactive|fs");
  };

  auto* commit = app.add_subcommand("commit", "commit to the rows of a data file");
  commit->add_option("--in", o.in, "data file")->required();
  commit->add_option("--out", o.out, "commitments file")->required();
  protocol_flags(commit);

  auto* challenge = app.add_subcommand("challenge", "draw a coding challenge, or projections for a response");
  challenge->add_option("--commitments", o.commitments)->required();
  challenge->add_option("--seed", o.seed, "verifier randomness");
  challenge->add_option("--out", o.out)->required();
  challenge->add_option("--projections-for", o.projections_for, "response file (interactive mode)");

  auto* respond = app.add_subcommand("respond", "answer a challenge from the data file");
  respond->add_option("--in", o.in, "data file")->required();
  respond->add_option("--commitments", o.commitments)->required();
  respond->add_option("--challenge", o.challenge)->required();
  respond->add_option("--projections", o.projections, "projections file: write the proof instead");
  respond->add_option("--adversary", o.adversary, "withhold:<seed>|inconsistent:<seed>");
  respond->add_option("--out", o.out)->required();

  auto* verify = app.add_subcommand("verify", "check a response; exit 0 if available, 1 if not");
  verify->add_option("--commitments", o.commitments)->required();
  verify->add_option("--challenge", o.challenge)->required();
  verify->add_option("--response", o.response)->required();
  verify->add_option("--projections", o.projections);
  verify->add_option("--proof", o.proof);

  auto* costs = app.add_subcommand("costs", "cost and probability tables");
  costs->add_option("--figure", o.figure, "fig3|fig4|fig4_sampling|fig4_commitment|table2")->required();
  costs->add_option("--target", o.target, "target failure probability");
  costs->add_option("--out", o.out, "output file (default stdout)");
  costs->add_option("--format", o.format, "csv|json (table2)");
  costs->add_option("--data-mib", o.data_mib, "data size for table2");
  costs->add_option("--m", o.m, "RLNC rows for table2");
  costs->add_option("--p", o.p, "RLNC projections for table2");
  costs->add_option("--accounting", o.accounting, "RLNC coded vector as field|group elements");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo / exhaustive experiments; exit 0 iff all in band");
  simulate->add_option("--spec", o.spec_file, "JSON experiment list");
  simulate->add_option("--kind", o.kind, "withholding|consistency|multiverifier_rank");
  simulate->add_option("--q", o.q, "prime field size");
  simulate->add_option("--m", o.m);
  simulate->add_option("--n", o.n);
  simulate->add_option("--l", o.l);
  simulate->add_option("--s", o.s);
  simulate->add_option("--p", o.p);
  simulate->add_option("--trials", o.trials);
  simulate->add_option("--seed", o.sim_seed, "master seed");
  simulate->add_option("--constraints", o.constraints, "withholding subspace codimension");
  simulate->add_option("--threads", o.threads);
  simulate->add_flag("--exhaustive", o.exhaustive);
  simulate->add_flag("--protocol", o.protocol_path, "run full sessions on the transparent group");
  simulate->add_option("--out", o.out);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (commit->parsed()) return cmd_commit(o, out);
    if (challenge->parsed()) return cmd_challenge(o, out);
    if (respond->parsed()) return cmd_respond(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (costs->parsed()) return cmd_costs(o, out);
    if (simulate->parsed()) return cmd_simulate(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace rlnc_das::cli
