#include "mdsforge/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "mdsforge/counting.hpp"
#include "mdsforge/decomp.hpp"
#include "mdsforge/enumerate.hpp"
#include "mdsforge/io.hpp"
#include "mdsforge/mdscheck.hpp"

namespace mdsforge {

namespace {

// Exit codes, also recorded inside every JSON envelope.
constexpr int kOk = 0;
constexpr int kFalse = 1;

SquareMatrix load_matrix(const std::string& field_text, const std::string& inline_text,
                         const std::string& in_path) {
    if (!inline_text.empty() && !in_path.empty())
        throw std::invalid_argument("give the matrix either inline or via --in, not both");
    std::string text = inline_text;
    if (!in_path.empty()) {
        std::ifstream in(in_path);
        if (!in) throw std::invalid_argument("cannot read matrix file: " + in_path);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    if (text.empty())
        throw std::invalid_argument("no matrix given (pass it inline or via --in FILE)");
    std::shared_ptr<const Field> f;
    if (!field_text.empty()) f = make_field(field_text);
    return matrix_from_text(std::move(f), text);
}

EnumKind parse_kind(const std::string& text, bool allow_certified, bool& certified_only) {
    certified_only = false;
    if (text == "representatives") return EnumKind::Representatives;
    if (text == "mds") return EnumKind::AllMds;
    if (text == "involutory") return EnumKind::AllInvolutory;
    if (allow_certified && text == "certified") {
        certified_only = true;  // count the certificate-carrying representatives
        return EnumKind::AllInvolutory;
    }
    throw std::invalid_argument("unknown kind '" + text + "' (expected representatives, mds, involutory" +
                                (allow_certified ? ", certified)" : ")"));
}

void emit(std::ostream& out, OutputFormat fmt, const OutputRecord& rec) {
    switch (fmt) {
        case OutputFormat::Json: out << record_to_json(rec).dump(2) << "\n"; return;
        case OutputFormat::JsonLines: out << record_to_json(rec).dump() << "\n"; return;
        case OutputFormat::Csv:
            throw std::invalid_argument("csv output applies only to matrix streams");
    }
}

nlohmann::json indices_1based(const std::vector<size_t>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (size_t x : v) a.push_back(x + 1);
    return a;
}

nlohmann::json violations_json(const std::vector<RViolation>& vs) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& v : vs)
        a.push_back(nlohmann::json{{"kind", to_string(v.kind)},
                                   {"rows", indices_1based(v.rows)},
                                   {"cols", indices_1based(v.cols)},
                                   {"detail", v.detail}});
    return a;
}

nlohmann::json refusal_json(const CertOutcome& oc) {
    return nlohmann::json{{"kind", to_string(oc.failure)},
                          {"i", oc.witness_i + 1},
                          {"j", oc.witness_j + 1}};
}

int cmd_check(std::ostream& out, OutputFormat fmt, const SquareMatrix& m, bool want_mds,
              bool want_inv, bool want_rep) {
    if (int(want_mds) + int(want_inv) + int(want_rep) != 1)
        throw std::invalid_argument("pick exactly one of --mds, --involutory, --representative");
    OutputRecord rec;
    rec.command = "check";
    rec.field = m.field()->spec_string();
    bool holds = false;
    if (want_mds) {
        holds = is_mds(m);
        rec.payload = nlohmann::json{{"property", "mds"}, {"holds", holds}};
    } else if (want_inv) {
        holds = is_involutory(m);
        rec.payload = nlohmann::json{{"property", "involutory"}, {"holds", holds}};
    } else {
        nlohmann::json vios = nlohmann::json::array();
        if (!has_ones_border(m)) {
            vios.push_back(nlohmann::json{
                {"kind", "NotRepresentativeForm"},
                {"rows", nlohmann::json::array()},
                {"cols", nlohmann::json::array()},
                {"detail", "first row and first column must be all ones"}});
        } else if (m.n() >= 2) {
            const size_t k = m.n() - 1;
            SquareMatrix r(m.field(), k);
            for (size_t i = 0; i < k; ++i)
                for (size_t j = 0; j < k; ++j) r.set(i, j, m.at(i + 1, j + 1));
            vios = violations_json(check_R(r));
            if (vios.empty() && !is_representative_mds(m)) {
                // only reachable from order 5 up: a middle minor order escaped
                // the interior conditions
                vios.push_back(nlohmann::json{{"kind", "NotMds"},
                                              {"rows", nlohmann::json::array()},
                                              {"cols", nlohmann::json::array()},
                                              {"detail", "a minor of the bordered matrix vanishes"}});
            }
        }
        holds = vios.empty();
        rec.payload = nlohmann::json{
            {"property", "representative-mds"}, {"holds", holds}, {"violations", vios}};
    }
    rec.exit_status = holds ? kOk : kFalse;
    emit(out, fmt, rec);
    return rec.exit_status;
}

int cmd_decompose(std::ostream& out, OutputFormat fmt, const SquareMatrix& m) {
    DecompositionTriple t = decompose(m);
    OutputRecord rec;
    rec.command = "decompose";
    rec.field = m.field()->spec_string();
    rec.payload = triple_to_json(t);
    emit(out, fmt, rec);
    return kOk;
}

int cmd_invcert(std::ostream& out, OutputFormat fmt, const SquareMatrix& m) {
    CertOutcome oc = certificate_explain(m);
    OutputRecord rec;
    rec.command = "invcert";
    rec.field = m.field()->spec_string();
    if (oc.cert) {
        rec.payload = certificate_to_json(*oc.cert);
        rec.payload["certified"] = true;
        rec.exit_status = kOk;
    } else {
        rec.payload = nlohmann::json{{"certified", false}, {"refusal", refusal_json(oc)}};
        rec.exit_status = kFalse;
    }
    emit(out, fmt, rec);
    return rec.exit_status;
}

int cmd_member(std::ostream& out, OutputFormat fmt, const SquareMatrix& m1,
               const std::string& lambdas_text, const std::string& alphas_text) {
    const Field& f = *m1.field();
    std::optional<InvolutoryCertificate> cert;
    if (!alphas_text.empty()) {
        cert = InvolutoryCertificate{m1.field(), parse_element_list(f, alphas_text)};
    } else {
        cert = involutory_certificate(m1);
        if (!cert) {
            OutputRecord rec;
            rec.command = "member";
            rec.field = f.spec_string();
            rec.payload = nlohmann::json{
                {"certified", false}, {"refusal", refusal_json(certificate_explain(m1))}};
            rec.exit_status = kFalse;
            emit(out, fmt, rec);
            return kFalse;
        }
    }
    SquareMatrix member = involutory_member(m1, *cert, parse_element_list(f, lambdas_text));
    if (fmt == OutputFormat::Csv) {
        out << matrix_to_csv(member) << "\n";
        return kOk;
    }
    OutputRecord rec;
    rec.command = "member";
    rec.field = f.spec_string();
    rec.payload = nlohmann::json{{"matrix", matrix_to_json(member)},
                                 {"involutory", is_involutory(member)},
                                 {"mds", is_mds(member)}};
    emit(out, fmt, rec);
    return kOk;
}

int cmd_enum(std::ostream& out, OutputFormat fmt, const EnumSpec& spec) {
    if (fmt == OutputFormat::JsonLines) {
        enum_stream(spec, [&](const SquareMatrix& m) { out << matrix_to_json(m).dump() << "\n"; });
        return kOk;
    }
    if (fmt == OutputFormat::Csv) {
        enum_stream(spec, [&](const SquareMatrix& m) { out << matrix_to_csv(m) << "\n"; });
        return kOk;
    }
    nlohmann::json matrices = nlohmann::json::array();
    enum_stream(spec, [&](const SquareMatrix& m) { matrices.push_back(matrix_to_json(m)); });
    OutputRecord rec;
    rec.command = "enum";
    rec.field = make_field(spec.field)->spec_string();
    rec.payload = nlohmann::json{{"kind", to_string(spec.kind)},
                                 {"order", spec.n},
                                 {"count", matrices.size()},
                                 {"matrices", std::move(matrices)}};
    emit(out, fmt, rec);
    return kOk;
}

int cmd_count(std::ostream& out, OutputFormat fmt, const EnumSpec& spec, bool certified_only,
              const std::string& kind_text, const CountOptions& opts, bool stable) {
    CountOutcome oc = count(spec, opts);
    OutputRecord rec;
    rec.command = "count";
    rec.field = make_field(spec.field)->spec_string();
    rec.payload = nlohmann::json{
        {"kind", kind_text},
        {"order", spec.n},
        {"count", u128_str(certified_only ? oc.certified : oc.value)},
        {"representatives", u128_str(oc.representatives)},
        {"certified", u128_str(oc.certified)},
        {"blocks", nlohmann::json{{"total", oc.blocks_total}, {"done", oc.blocks_done}}},
        {"resumed", oc.resumed},
        {"complete", oc.complete},
    };
    if (!stable) rec.payload["elapsed_seconds"] = oc.elapsed_seconds;
    emit(out, fmt, rec);
    return kOk;
}

int cmd_count_formula(std::ostream& out, OutputFormat fmt, uint32_t m, const std::string& what) {
    u128 value;
    if (what == "rep3")
        value = formula_rep3(m);
    else if (what == "mds3")
        value = formula_mds3(m);
    else if (what == "inv3")
        value = formula_inv3(m);
    else if (what == "noninv3")
        value = formula_noninv3(m);
    else
        throw std::invalid_argument("unknown formula '" + what +
                                    "' (expected rep3, mds3, inv3 or noninv3)");
    OutputRecord rec;
    rec.command = "count-formula";
    rec.field = "2^" + std::to_string(m);
    rec.payload = nlohmann::json{{"m", m}, {"what", what}, {"value", u128_str(value)}};
    emit(out, fmt, rec);
    return kOk;
}

int cmd_verify(std::ostream& out, OutputFormat fmt, const FieldSpec& fs, uint32_t order,
               EnumKind kind, const std::string& kind_text, const CountOptions& opts) {
    CountReport rep = verify(fs, order, kind, opts);
    OutputRecord rec;
    rec.command = "verify";
    rec.field = make_field(fs)->spec_string();
    rec.payload = nlohmann::json{
        {"order", rep.n},
        {"kind", kind_text},
        {"source", to_string(rep.source)},
        {"formula", rep.formula_value ? nlohmann::json(u128_str(*rep.formula_value))
                                      : nlohmann::json(nullptr)},
        {"enumerated", rep.enumerated_value ? nlohmann::json(u128_str(*rep.enumerated_value))
                                            : nlohmann::json(nullptr)},
        {"agrees", rep.agrees},
    };
    rec.exit_status = rep.agrees ? kOk : kFalse;
    emit(out, fmt, rec);
    return rec.exit_status;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"finite-field toolkit: generate, certify and count MDS and involutory MDS "
                 "matrices through their representative decomposition"};
    app.name("mdsforge");
    app.require_subcommand(1);

    std::string field_text, format_text = "json", matrix_text, in_path;
    std::string kind_text = "representatives", lambdas_text, alphas_text, what_text;
    std::string checkpoint_path;
    uint32_t order = 3, formula_m = 3;
    uint64_t limit = EnumSpec{}.stream_limit;
    unsigned jobs = 1;
    bool want_mds = false, want_inv = false, want_rep = false, stable = false;

    auto add_field = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--field", field_text,
                                    "field spec, e.g. 2^4/0x13 or 7 (env MDSFORGE_FIELD)")
                        ->envname("MDSFORGE_FIELD");
        if (required) opt->required();
    };
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format_text, "output format: json, jsonl or csv");
    };
    auto add_matrix = [&](CLI::App* sub) {
        sub->add_option("matrix", matrix_text, "matrix text: rows ';', entries ',', or JSON");
        sub->add_option("--in", in_path, "read the matrix from this file");
    };

    auto* check = app.add_subcommand(
        "check", "test a matrix: every minor nonzero (--mds), squares to the identity "
                 "(--involutory), or all-ones border with a qualifying interior "
                 "(--representative)");
    check->add_flag("--mds", want_mds, "all minors of all orders nonzero");
    check->add_flag("--involutory", want_inv, "M * M equals the identity");
    check->add_flag("--representative", want_rep,
                    "representative MDS form; failures come with condition witnesses");
    add_field(check, false);
    add_format(check);
    add_matrix(check);

    auto* decompose_cmd = app.add_subcommand(
        "decompose", "split a matrix with nonzero entries into Diag(lambda) * M1 * Diag(1, "
                     "theta): the unique factorization through the all-ones-bordered "
                     "representative M1");
    add_field(decompose_cmd, false);
    add_format(decompose_cmd);
    add_matrix(decompose_cmd);

    auto* invcert = app.add_subcommand(
        "invcert", "find the alpha vector tying inverse(M1) to M1 entrywise; its existence "
                   "decides whether any diagonal sandwich of M1 is involutory");
    add_field(invcert, false);
    add_format(invcert);
    add_matrix(invcert);

    auto* member = app.add_subcommand(
        "member", "build the involutory member Diag(alpha_1, lambdas) * M1 * Diag(1, "
                  "alpha_j / lambda_j) from a certified representative");
    member->add_option("--lambdas", lambdas_text, "n-1 nonzero elements, comma-separated")
        ->required();
    member->add_option("--alphas", alphas_text,
                       "certificate vector; computed from the matrix when omitted");
    add_field(member, false);
    add_format(member);
    add_matrix(member);

    auto* enum_cmd = app.add_subcommand(
        "enum", "stream representative, all-MDS, or involutory-MDS matrices in canonical "
                "order (jsonl: one matrix object per line)");
    add_field(enum_cmd, true);
    enum_cmd->add_option("--order", order, "matrix order n >= 2")->required();
    enum_cmd->add_option("--kind", kind_text, "representatives, mds or involutory");
    enum_cmd->add_option("--limit", limit, "stream cardinality bound (default 10^8)");
    add_format(enum_cmd);

    auto* count_cmd = app.add_subcommand(
        "count", "census without materialization: representatives, mds or involutory "
                 "members, or certified (certificate-carrying representatives)");
    add_field(count_cmd, true);
    count_cmd->add_option("--order", order, "matrix order n >= 2")->required();
    count_cmd->add_option("--kind", kind_text, "representatives, mds, involutory or certified");
    count_cmd->add_option("--jobs", jobs, "worker threads (result is worker-independent)");
    count_cmd->add_option("--checkpoint", checkpoint_path,
                          "persist progress here and resume from a matching file");
    count_cmd->add_flag("--stable", stable, "omit timing so identical runs emit identical bytes");
    add_format(count_cmd);

    auto* formula = app.add_subcommand(
        "count-formula", "evaluate a 3x3 closed form over GF(2^m): rep3, mds3, inv3, noninv3");
    formula->add_option("--m", formula_m, "extension degree m >= 1")->required();
    formula->add_option("--what", what_text, "rep3, mds3, inv3 or noninv3")->required();
    add_format(formula);

    auto* verify_cmd = app.add_subcommand(
        "verify", "run the census and compare against the closed form or table; exit 0 only "
                  "on agreement");
    add_field(verify_cmd, true);
    verify_cmd->add_option("--order", order, "matrix order n >= 2")->required();
    verify_cmd->add_option("--kind", kind_text, "representatives, mds or involutory");
    verify_cmd->add_option("--jobs", jobs, "worker threads");
    add_format(verify_cmd);

    std::vector<std::string> argv_like{"mdsforge"};
    argv_like.insert(argv_like.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(argv_like.size());
    for (const auto& a : argv_like) argv.push_back(a.c_str());

    try {
        app.parse((int)argv.size(), argv.data());

        const OutputFormat fmt = parse_output_format(format_text);
        if (app.got_subcommand(check))
            return cmd_check(out, fmt, load_matrix(field_text, matrix_text, in_path), want_mds,
                             want_inv, want_rep);
        if (app.got_subcommand(decompose_cmd))
            return cmd_decompose(out, fmt, load_matrix(field_text, matrix_text, in_path));
        if (app.got_subcommand(invcert))
            return cmd_invcert(out, fmt, load_matrix(field_text, matrix_text, in_path));
        if (app.got_subcommand(member))
            return cmd_member(out, fmt, load_matrix(field_text, matrix_text, in_path),
                              lambdas_text, alphas_text);
        if (app.got_subcommand(enum_cmd)) {
            bool certified_only = false;
            EnumSpec spec;
            spec.field = FieldSpec::parse(field_text);
            spec.n = order;
            spec.kind = parse_kind(kind_text, false, certified_only);
            spec.mode = EnumMode::Stream;
            spec.stream_limit = limit;
            return cmd_enum(out, fmt, spec);
        }
        if (app.got_subcommand(count_cmd)) {
            bool certified_only = false;
            EnumSpec spec;
            spec.field = FieldSpec::parse(field_text);
            spec.n = order;
            spec.kind = parse_kind(kind_text, true, certified_only);
            spec.mode = EnumMode::CountOnly;
            CountOptions opts;
            opts.workers = jobs;
            opts.checkpoint_path = checkpoint_path;
            return cmd_count(out, fmt, spec, certified_only, kind_text, opts, stable);
        }
        if (app.got_subcommand(formula)) return cmd_count_formula(out, fmt, formula_m, what_text);
        if (app.got_subcommand(verify_cmd)) {
            bool certified_only = false;
            const EnumKind kind = parse_kind(kind_text, false, certified_only);
            CountOptions opts;
            opts.workers = jobs;
            return cmd_verify(out, fmt, FieldSpec::parse(field_text), order, kind, kind_text,
                              opts);
        }
        throw std::invalid_argument("no subcommand selected");
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return 0;
        }
        app.exit(e, out, err);
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace mdsforge
