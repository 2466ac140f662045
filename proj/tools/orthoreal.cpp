// orthoreal: exact computations in finite orthogonal groups.
//
// Subcommands: element info, decompose, reality, census, construct,
// chartable, verify-paper.  Reports are JSON (CSV for census class tables);
// identical configuration and seed give byte-identical output.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "orthoreal/characters.hpp"
#include "orthoreal/constructions.hpp"
#include "orthoreal/io.hpp"
#include "orthoreal/verify.hpp"

using json = nlohmann::ordered_json;
using namespace ortho;

namespace {

constexpr const char* kVersion = "0.1.0";

uint64_t env_cap(uint64_t fallback) {
    if (const char* e = std::getenv("ORTHOREAL_CAP")) return std::strtoull(e, nullptr, 10);
    return fallback;
}

json convention_block(const Field* f) {
    json c;
    c["discriminant"] = "square class of det(Gram), unnormalized; type calibrated against the split Gram J_n";
    c["spinor_norm"] = "theta(r_v) = square class of Q(v), via greedy reflection factorization";
    c["char2_omega"] = "rank(g + I) parity";
    if (f) c["field_modulus"] = f->modulus_string();
    return c;
}

json report_shell(const std::string& command, const Field* f) {
    json r;
    r["schema"] = "orthoreal/1";
    r["library_version"] = kVersion;
    r["command"] = command;
    r["conventions"] = convention_block(f);
    return r;
}

void emit(const json& r, const std::string& out_path) {
    std::string text = r.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
}

json divisors_json(const FqMatrix& g) {
    json a = json::array();
    for (const auto& [f, e] : elementary_divisors(g)) {
        json d;
        d["factor"] = f.str();
        d["exponent"] = e;
        a.push_back(d);
    }
    return a;
}

json matrix_json(const FqMatrix& m) {
    json rows = json::array();
    for (uint32_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (uint32_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
        rows.push_back(row);
    }
    return rows;
}

QuadSpace space_by_config(uint64_t q, uint32_t n, const std::string& type) {
    const Field& F = field_for(q);
    if (type == "plus") return QuadSpace::split(F, n);
    if (type == "minus") return QuadSpace::nonsplit(F, n);
    fail(ErrorCode::InvalidConfig, "type must be plus or minus");
}

int guarded(const std::function<void()>& body) {
    try {
        body();
        return 0;
    } catch (const Error& e) {
        json err;
        err["schema"] = "orthoreal/1";
        err["error"]["code"] = error_code_name(e.code());
        err["error"]["message"] = e.what();
        std::cerr << err.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations in finite orthogonal groups over F_q"};
    app.require_subcommand(1);
    app.fallthrough(); // allow --seed / --threads after the subcommand name

    uint64_t cap = env_cap(kDefaultRealityCap);
    int threads = 1;
    uint64_t seed = 1;
    std::string out_path;
    app.add_option("--threads", threads, "worker count for partitionable operations (default 1)");
    app.add_option("--seed", seed, "seed for randomized subroutines");

    // ---- element info
    auto* elem = app.add_subcommand("element", "per-element reports");
    auto* info = elem->add_subcommand("info", "lattice membership and divisors of an isometry");
    std::string space_file, matrix_file;
    info->add_option("--space", space_file, "space file")->required();
    info->add_option("--matrix", matrix_file, "matrix file")->required();
    info->add_option("--out", out_path, "output path (default stdout)");

    // ---- decompose
    auto* dec = app.add_subcommand("decompose", "orthogonal decomposition of an isometry");
    std::string d_space, d_matrix, d_out;
    dec->add_option("--space", d_space)->required();
    dec->add_option("--matrix", d_matrix)->required();
    dec->add_option("--out", d_out);

    // ---- reality
    auto* re = app.add_subcommand("reality", "real / strongly real decision with certificates");
    std::string r_space, r_matrix, r_group = "omega", r_out;
    bool r_proj = false;
    uint64_t r_cap = cap;
    re->add_option("--space", r_space)->required();
    re->add_option("--matrix", r_matrix)->required();
    re->add_option("--group", r_group, "omega|so|k|t|o");
    re->add_flag("--projective", r_proj, "work modulo the center");
    re->add_option("--cap", r_cap, "candidate evaluation cap");
    re->add_option("--out", r_out);

    // ---- census
    auto* ce = app.add_subcommand("census", "conjugacy classes with reality verdicts");
    std::string c_type = "plus", c_group = "omega", c_out, c_format = "json";
    uint32_t c_n = 4;
    uint64_t c_q = 3, c_cap2 = 200000, c_sample = 0;
    ce->add_option("--type", c_type, "plus|minus")->required();
    ce->add_option("--n", c_n)->required();
    ce->add_option("--q", c_q)->required();
    ce->add_option("--group", c_group, "omega|so|k|t|o");
    ce->add_option("--cap", c_cap2, "enumeration cap");
    ce->add_option("--sample", c_sample, "sampled census with this many elements");
    ce->add_option("--format", c_format, "json|csv");
    ce->add_option("--out", c_out);

    // ---- construct
    auto* co = app.add_subcommand("construct", "explicit elements with verified facts");
    std::string n_name, n_out_dir;
    uint64_t n_q = 3;
    uint32_t n_m = 1;
    co->add_option("--name", n_name, "u|s0|h|u1|h0|eta|g-family")->required();
    co->add_option("--q", n_q)->required();
    co->add_option("--m", n_m, "family index for g-family");
    co->add_option("--out", n_out_dir, "directory for space/matrix/report files");

    // ---- chartable
    auto* ch = app.add_subcommand("chartable", "character table with indicators");
    std::string h_type = "plus", h_group = "omega", h_out, h_twist;
    uint32_t h_n = 4;
    uint64_t h_q = 3, h_cap = 100000;
    bool h_fs = false;
    ch->add_option("--type", h_type)->required();
    ch->add_option("--n", h_n)->required();
    ch->add_option("--q", h_q)->required();
    ch->add_option("--group", h_group, "omega|so|k|t|o|pomega");
    ch->add_flag("--fs", h_fs, "include Frobenius-Schur indicators");
    ch->add_option("--twist-by", h_twist, "matrix file of an involution normalizing the group");
    ch->add_option("--cap", h_cap);
    ch->add_option("--out", h_out);

    // ---- verify-paper
    auto* ve = app.add_subcommand("verify-paper", "run the acceptance suite");
    std::string v_budget = "desk", v_out;
    ve->add_option("--budget", v_budget, "desk (the only supported budget)");
    ve->add_option("--out", v_out);

    CLI11_PARSE(app, argc, argv);

    if (info->parsed()) return guarded([&] {
        QuadSpace S = parse_space(read_file(space_file));
        const Field* F = nullptr;
        FqMatrix g = parse_matrix(read_file(matrix_file), F);
        if (!S.is_isometry(g)) fail(ErrorCode::SpaceMismatch, "matrix does not preserve the form");
        json r = report_shell("element info", &S.field());
        r["q"] = S.field().q();
        r["n"] = S.dim();
        r["det"] = g.det();
        if (!S.char_two()) {
            r["spinor_norm"] = to_string(spinor_norm(S, g));
            r["in_SO"] = member(S, g, Group::SO);
            r["in_K"] = member(S, g, Group::K);
            r["in_T"] = member(S, g, Group::T);
        }
        r["in_Omega"] = member(S, g, Group::Omega);
        r["elementary_divisors"] = divisors_json(g);
        emit(r, out_path);
    });

    if (dec->parsed()) return guarded([&] {
        QuadSpace S = parse_space(read_file(d_space));
        const Field* F = nullptr;
        FqMatrix g = parse_matrix(read_file(d_matrix), F);
        auto d = decompose(S, g);
        json r = report_shell("decompose", &S.field());
        json blocks = json::array();
        for (const auto& b : d.blocks) {
            json jb;
            jb["type"] = to_string(b.type);
            jb["dim"] = b.basis.size();
            json divs = json::array();
            for (const auto& [f, e] : b.divisors) divs.push_back({{"factor", f.str()}, {"exponent", e}});
            jb["divisors"] = divs;
            json basis = json::array();
            for (const auto& v : b.basis) basis.push_back(v);
            jb["basis"] = basis;
            jb["restricted_gram"] = matrix_json(S.char_two() ? b.restricted.quadratic_gram()
                                                             : b.restricted.bilinear_gram());
            if (!S.char_two()) {
                auto m = classify_block_membership(b);
                jb["block_membership"] = {{"det", m.det},
                                          {"theta", to_string(m.theta)},
                                          {"in_omega", m.in_omega}};
            }
            blocks.push_back(jb);
        }
        r["blocks"] = blocks;
        emit(r, d_out);
    });

    if (re->parsed()) return guarded([&] {
        QuadSpace S = parse_space(read_file(r_space));
        const Field* F = nullptr;
        FqMatrix g = parse_matrix(read_file(r_matrix), F);
        auto v = decide_reality(S, g, group_from_string(r_group), r_proj, r_cap, threads);
        json r = report_shell("reality", &S.field());
        r["group"] = r_group;
        r["projective"] = r_proj;
        r["real"] = v.real;
        r["strongly_real"] = v.strongly_real;
        r["weakly_real"] = v.real && !v.strongly_real;
        if (r_proj) {
            r["real_mod_z"] = v.real_mod_z;
            r["strongly_real_mod_z"] = v.strongly_real_mod_z;
        }
        r["search_cost"] = v.search_cost;
        r["capped"] = v.capped;
        r["certificates_canonical"] = threads <= 1;
        if (v.real_cert) r["real_certificate"] = matrix_json(*v.real_cert);
        if (v.strong_cert) r["strong_certificate"] = matrix_json(*v.strong_cert);
        if (r_proj && v.real_mod_z_cert) r["real_mod_z_certificate"] = matrix_json(*v.real_mod_z_cert);
        if (r_proj && v.strong_mod_z_cert) r["strong_mod_z_certificate"] = matrix_json(*v.strong_mod_z_cert);
        emit(r, r_out);
    });

    if (ce->parsed()) return guarded([&] {
        QuadSpace S = space_by_config(c_q, c_n, c_type);
        ClassReport rep = c_sample ? sampled_census(S, group_from_string(c_group), c_sample, seed, cap)
                                   : census(S, group_from_string(c_group), c_cap2, cap);
        if (c_format == "csv") {
            std::string csv = "class,size,order,real,strongly_real,weakly_real,capped\n";
            for (size_t i = 0; i < rep.classes.size(); ++i) {
                const auto& c = rep.classes[i];
                csv += std::to_string(i) + "," + std::to_string(c.size) + "," + std::to_string(c.order) + "," +
                       std::to_string(c.real) + "," + std::to_string(c.strongly_real) + "," +
                       std::to_string(c.weakly_real) + "," + std::to_string(c.capped) + "\n";
            }
            if (c_out.empty())
                std::cout << csv;
            else
                write_file(c_out, csv);
            return;
        }
        json r = report_shell("census", &S.field());
        r["n"] = rep.n;
        r["q"] = rep.q;
        r["form_type"] = to_string(rep.type);
        r["group"] = to_string(rep.group);
        r["group_order"] = rep.group_order;
        r["sampled"] = rep.sampled;
        if (rep.sampled) r["sample_size"] = rep.sample_size;
        r["seed"] = seed;
        json cls = json::array();
        for (const auto& c : rep.classes) {
            json jc;
            jc["size"] = c.size;
            jc["order"] = c.order;
            jc["real"] = c.real;
            jc["strongly_real"] = c.strongly_real;
            jc["weakly_real"] = c.weakly_real;
            jc["capped"] = c.capped;
            jc["representative"] = matrix_json(c.rep);
            cls.push_back(jc);
        }
        r["classes"] = cls;
        json checks = json::array();
        for (const auto& c : rep.checks)
            checks.push_back({{"label", c.label}, {"passed", c.passed}, {"detail", c.detail}});
        r["theorem_checks"] = checks;
        emit(r, c_out);
    });

    if (co->parsed()) return guarded([&] {
        auto c = build_by_name(n_name, n_q, n_m, cap);
        json r = report_shell("construct", &c.space.field());
        r["name"] = c.name;
        r["q"] = n_q;
        r["dim"] = c.space.dim();
        r["form_type"] = to_string(c.space.form_type());
        json facts;
        for (const auto& [k, v] : c.facts) facts[k] = v;
        r["facts"] = facts;
        r["matrix"] = matrix_json(c.matrix);
        if (!n_out_dir.empty()) {
            write_file(n_out_dir + "/" + c.name + ".space", serialize_space(c.space));
            write_file(n_out_dir + "/" + c.name + ".mat", serialize_matrix(c.matrix));
            write_file(n_out_dir + "/" + c.name + ".json", r.dump(2) + "\n");
        } else {
            emit(r, "");
        }
    });

    if (ch->parsed()) return guarded([&] {
        QuadSpace S = space_by_config(h_q, h_n, h_type);
        Group G = group_from_string(h_group);
        FinGroup g = G == Group::POmega ? FinGroup::quotient_pm(enumerate_group(S, Group::Omega, h_cap))
                                        : FinGroup::from_enumerated(enumerate_group(S, G, h_cap));
        auto t = char_table(g, h_cap);
        json r = report_shell("chartable", &S.field());
        r["group"] = h_group;
        r["group_order"] = t.order;
        r["num_classes"] = t.classes.num();
        r["exponent"] = t.exponent;
        r["splitting_prime"] = t.ell;
        json cls = json::array();
        for (uint32_t k = 0; k < t.classes.num(); ++k)
            cls.push_back({{"size", t.classes.sizes[k]},
                           {"representative", matrix_json(g.elems[t.classes.reps[k]])}});
        r["classes"] = cls;
        json chars = json::array();
        std::optional<FqMatrix> twist_mat;
        if (!h_twist.empty()) {
            const Field* F = nullptr;
            twist_mat = parse_matrix(read_file(h_twist), F);
        }
        for (uint32_t c = 0; c < t.num_chars(); ++c) {
            json jc;
            jc["degree"] = t.degrees[c];
            if (h_fs) jc["fs_indicator"] = fs_indicator(t, c);
            if (twist_mat) jc["twisted_indicator"] = twisted_indicator(g, t, *twist_mat, c);
            json vals = json::array();
            for (uint32_t k = 0; k < t.classes.num(); ++k) {
                // sparse cyclotomic coordinates: pairs [power, multiplicity]
                json v = json::array();
                for (uint32_t i = 0; i < t.values[c][k].level; ++i)
                    if (t.values[c][k].m[i]) v.push_back({i, t.values[c][k].m[i]});
                vals.push_back(v);
            }
            jc["values_zeta_order"] = t.exponent;
            jc["values"] = vals;
            chars.push_back(jc);
        }
        r["characters"] = chars;
        emit(r, h_out);
    });

    if (ve->parsed()) return guarded([&] {
        if (v_budget != "desk") fail(ErrorCode::InvalidConfig, "only --budget desk is supported");
        auto results = run_acceptance(&std::cerr);
        json r = report_shell("verify-paper", nullptr);
        json items = json::array();
        bool all = true;
        for (const auto& res : results) {
            items.push_back({{"criterion", res.id},
                             {"title", res.title},
                             {"passed", res.passed},
                             {"seconds", res.seconds},
                             {"detail", res.detail}});
            all = all && res.passed;
        }
        r["criteria"] = items;
        r["all_passed"] = all;
        emit(r, v_out);
        if (!all) std::exit(1);
    });

    return 0;
}
