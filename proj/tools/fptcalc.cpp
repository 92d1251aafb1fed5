// fptcalc: exact F-pure thresholds and F-thresholds of (quasi-)homogeneous
// polynomials in two variables over finite fields, with region rendering.

#include "sgf/fpt.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace sgf;
using nlohmann::json;

std::vector<std::string> split_top_level(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string current;
    int depth = 0;
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            parts.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    parts.push_back(current);
    return parts;
}

poly::LinearForm parse_linear(const gf::FieldPtr& field, const std::string& text) {
    poly::BinaryForm f = poly::parse_form(text, field);
    if (f.degree != 1) throw std::domain_error("'" + text + "' is not a linear form");
    return poly::make_linear_form(field, f.coeff(0), f.coeff(1));
}

fractal::LinearSystem parse_system(const gf::FieldPtr& field, const std::string& text) {
    std::vector<poly::LinearForm> forms;
    for (const auto& part : split_top_level(text, ',')) forms.push_back(parse_linear(field, part));
    return fractal::LinearSystem::make(field, std::move(forms));
}

syzygy::TwoGenIdeal parse_ideal(const gf::FieldPtr& field, const std::string& text) {
    auto parts = split_top_level(text, ',');
    if (parts.size() != 2) throw std::domain_error("--ideal expects two comma-separated generators");
    return syzygy::TwoGenIdeal::make(poly::parse_form(parts[0], field), poly::parse_form(parts[1], field));
}

unsigned exponent_of_q(std::uint64_t p, std::uint64_t q) {
    unsigned e = 0;
    std::uint64_t v = 1;
    while (v < q) {
        v *= p;
        ++e;
    }
    if (v != q) throw std::domain_error("--q must be a power of the field characteristic");
    return e;
}

std::vector<std::pair<arith::Rational, arith::Rational>> parse_box(const std::string& text) {
    std::vector<std::pair<arith::Rational, arith::Rational>> box;
    for (const auto& part : split_top_level(text, ',')) {
        auto colon = part.find(':');
        if (colon == std::string::npos) throw std::domain_error("box axis must be lo:hi");
        box.emplace_back(arith::rational_from_string(part.substr(0, colon)),
                         arith::rational_from_string(part.substr(colon + 1)));
    }
    return box;
}

std::string modulus_string(const gf::Field& field) {
    std::ostringstream out;
    bool first = true;
    for (unsigned i = field.deg() + 1; i-- > 0;) {
        std::uint64_t c = i < field.modulus().size() ? field.modulus()[i] : 0;
        if (c == 0) continue;
        if (!first) out << "+";
        first = false;
        if (i == 0) {
            out << c;
        } else {
            if (c != 1) out << c << "*";
            out << field.generator_symbol();
            if (i > 1) out << "^" << i;
        }
    }
    return first ? "0" : out.str();
}

json field_to_json(const gf::Field& field) {
    return json{{"p", field.p()}, {"deg", field.deg()}, {"mod", modulus_string(field)}};
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::domain_error("cannot open output file " + out_path);
        out << j.dump(2) << "\n";
    }
}

std::ofstream open_binary(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::domain_error("cannot open output file " + path);
    return out;
}

struct CommonOptions {
    std::string field_spec;
    std::uint64_t seed = 0x5eedf00dull;
    unsigned e_max = 40;
    std::uint64_t cell_cap = 200000;
    bool debug_oracle = false;

    fpt::FtConfig config() const {
        fpt::FtConfig cfg;
        cfg.e_max = e_max;
        cfg.seed = seed;
        cfg.debug_oracle = debug_oracle;
        return cfg;
    }
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--field", opts.field_spec, "field spec, e.g. p=5 or p=5;deg=3;mod=a^3+a+1")
        ->required();
    cmd->add_option("--seed", opts.seed, "PRNG seed for factorization");
    cmd->add_option("--E-max,--e-max", opts.e_max, "digit-chain bound when p divides den(lambda)");
    cmd->add_option("--cell-cap", opts.cell_cap, "grid sweep cell cap");
    cmd->add_flag("--debug-oracle", opts.debug_oracle, "cross-check trivial-region results with nu(p)");
}

void apply_env(CommonOptions& opts, bool e_max_set, bool cell_cap_set) {
    if (!e_max_set) {
        if (const char* v = std::getenv("FPTCALC_E_MAX")) opts.e_max = static_cast<unsigned>(std::stoul(v));
    }
    if (!cell_cap_set) {
        if (const char* v = std::getenv("FPTCALC_CELL_CAP")) opts.cell_cap = std::stoull(v);
    }
}

int run(int argc, char** argv) {
    CLI::App app{"exact F-pure thresholds of binary forms via syzygy gap fractals"};
    app.require_subcommand(1);

    // fpt
    auto* fpt_cmd = app.add_subcommand("fpt", "F-pure threshold of a (quasi-)homogeneous polynomial");
    CommonOptions fpt_opts;
    add_common(fpt_cmd, fpt_opts);
    std::string fpt_poly, fpt_weights, fpt_out;
    fpt_cmd->add_option("--poly", fpt_poly, "polynomial expression")->required();
    fpt_cmd->add_option("--weights", fpt_weights, "weights u,v for the quasi-homogeneous grading");
    fpt_cmd->add_option("--out", fpt_out, "write JSON here instead of stdout");

    // ft
    auto* ft_cmd = app.add_subcommand("ft", "F-threshold of l^a with respect to a two-generator ideal");
    CommonOptions ft_opts;
    add_common(ft_cmd, ft_opts);
    std::string ft_ell, ft_exps, ft_ideal, ft_out;
    ft_cmd->add_option("--ell", ft_ell, "comma-separated pairwise prime linear forms")->required();
    ft_cmd->add_option("--exponents", ft_exps, "comma-separated positive exponents")->required();
    ft_cmd->add_option("--ideal", ft_ideal, "two comma-separated coprime forms U,V")->required();
    ft_cmd->add_option("--out", ft_out, "write JSON here instead of stdout");

    // factor
    auto* factor_cmd = app.add_subcommand("factor", "factor a form into linear forms over a splitting field");
    CommonOptions factor_opts;
    add_common(factor_cmd, factor_opts);
    std::string factor_poly, factor_out;
    factor_cmd->add_option("--poly", factor_poly, "polynomial expression")->required();
    factor_cmd->add_option("--out", factor_out, "write JSON here instead of stdout");

    // critical
    auto* crit_cmd = app.add_subcommand("critical", "enumerate critical points in a box at denominator q");
    CommonOptions crit_opts;
    add_common(crit_cmd, crit_opts);
    std::string crit_ell, crit_ideal, crit_box, crit_out;
    std::uint64_t crit_q = 1;
    crit_cmd->add_option("--ell", crit_ell, "linear forms")->required();
    crit_cmd->add_option("--ideal", crit_ideal, "ideal generators U,V")->required();
    crit_cmd->add_option("--q", crit_q, "denominator (power of p)")->required();
    crit_cmd->add_option("--box", crit_box, "box lo:hi per axis, comma separated")->required();
    crit_cmd->add_option("--out", crit_out, "write JSON here instead of stdout");

    // grid
    auto* grid_cmd = app.add_subcommand("grid", "sweep delta and the region bit over a box");
    CommonOptions grid_opts;
    add_common(grid_cmd, grid_opts);
    std::string grid_ell, grid_ideal, grid_box, grid_out, grid_format = "csv", grid_mode = "delta";
    std::uint64_t grid_q = 1;
    grid_cmd->add_option("--ell", grid_ell, "linear forms")->required();
    grid_cmd->add_option("--ideal", grid_ideal, "ideal generators U,V")->required();
    grid_cmd->add_option("--q", grid_q, "denominator (power of p)")->required();
    grid_cmd->add_option("--box", grid_box, "box lo:hi per axis, comma separated")->required();
    grid_cmd->add_option("--format", grid_format, "csv | pgm | pgm5");
    grid_cmd->add_option("--mode", grid_mode, "pgm payload: delta | region");
    grid_cmd->add_option("--out", grid_out, "output file (default stdout for csv)");

    // staircase
    auto* stair_cmd = app.add_subcommand("staircase", "boundary classification on the slice |t| = deg UV");
    CommonOptions stair_opts;
    add_common(stair_cmd, stair_opts);
    std::string stair_ell = "x,y,x+y", stair_ideal = "x,y", stair_out, stair_format = "pgm";
    std::uint64_t stair_q = 16;
    stair_cmd->add_option("--ell", stair_ell, "three pairwise prime linear forms");
    stair_cmd->add_option("--ideal", stair_ideal, "ideal generators U,V");
    stair_cmd->add_option("--q", stair_q, "denominator (power of p)")->required();
    stair_cmd->add_option("--format", stair_format, "pgm | pgm5 | csv");
    stair_cmd->add_option("--out", stair_out, "output file (default stdout for csv)");

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "nu(p^e) table by brute-force membership");
    CommonOptions oracle_opts;
    add_common(oracle_cmd, oracle_opts);
    std::string oracle_poly, oracle_ideal = "x,y", oracle_out;
    unsigned oracle_e = 2;
    oracle_cmd->add_option("--poly", oracle_poly, "polynomial expression")->required();
    oracle_cmd->add_option("--ideal", oracle_ideal, "ideal generators U,V");
    oracle_cmd->add_option("--e-top", oracle_e, "largest e in the table");
    oracle_cmd->add_option("--out", oracle_out, "write JSON here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    if (fpt_cmd->parsed()) {
        apply_env(fpt_opts, fpt_cmd->count("--E-max") > 0, fpt_cmd->count("--cell-cap") > 0);
        auto field = gf::parse_field_spec(fpt_opts.field_spec);
        fpt::FptResult result;
        if (fpt_weights.empty()) {
            result = fpt::fpt_homogeneous(poly::parse_form(fpt_poly, field), fpt_opts.config());
        } else {
            auto parts = split_top_level(fpt_weights, ',');
            if (parts.size() != 2) throw std::domain_error("--weights expects u,v");
            fpt::QuasiHomogeneousInput in;
            in.g = poly::parse_polynomial(fpt_poly, field, "X", "Y");
            in.u = std::stoull(parts[0]);
            in.v = std::stoull(parts[1]);
            result = fpt::fpt_quasi_homogeneous(in, fpt_opts.config());
        }
        json j = fpt::result_to_json(result);
        j["field"] = field_to_json(*field);
        emit(j, fpt_out);
        return 0;
    }

    if (ft_cmd->parsed()) {
        apply_env(ft_opts, ft_cmd->count("--E-max") > 0, ft_cmd->count("--cell-cap") > 0);
        auto field = gf::parse_field_spec(ft_opts.field_spec);
        auto ell = parse_system(field, ft_ell);
        auto ideal = parse_ideal(field, ft_ideal);
        std::vector<std::uint64_t> exps;
        for (const auto& part : split_top_level(ft_exps, ',')) exps.push_back(std::stoull(part));
        fpt::FptResult result = fpt::ft_general(ell, exps, ideal, ft_opts.config());
        json j = fpt::result_to_json(result);
        j["field"] = field_to_json(*field);
        emit(j, ft_out);
        return 0;
    }

    if (factor_cmd->parsed()) {
        auto field = gf::parse_field_spec(factor_opts.field_spec);
        auto fact = poly::factor_linear(poly::parse_form(factor_poly, field), {factor_opts.seed});
        json j;
        j["unit"] = fact.field->to_string(fact.unit);
        j["factors"] = json::array();
        for (const auto& [l, mult] : fact.factors) {
            j["factors"].push_back(json{{"alpha", fact.field->to_string(l.alpha)},
                                        {"beta", fact.field->to_string(l.beta)},
                                        {"form", poly::linear_to_string(*fact.field, l)},
                                        {"mult", mult}});
        }
        j["field"] = field_to_json(*fact.field);
        emit(j, factor_out);
        return 0;
    }

    if (crit_cmd->parsed()) {
        apply_env(crit_opts, crit_cmd->count("--E-max") > 0, crit_cmd->count("--cell-cap") > 0);
        auto field = gf::parse_field_spec(crit_opts.field_spec);
        auto ell = parse_system(field, crit_ell);
        auto ideal = parse_ideal(field, crit_ideal);
        unsigned e = exponent_of_q(field->p(), crit_q);
        auto box = parse_box(crit_box);
        if (box.size() != ell.size()) throw std::domain_error("box dimension must match --ell");
        std::vector<arith::Rational> lo, hi;
        for (auto& [l, h] : box) {
            lo.push_back(l);
            hi.push_back(h);
        }
        // enumerate cells, keep the critical ones
        auto sweep = fractal::grid_sweep(ell, ideal, lo, hi, e, crit_opts.cell_cap);
        fractal::UpperTester tester(ell, ideal);
        json list = json::array();
        for (const auto& cell : sweep.cells) {
            if (!cell.upper) continue;
            fractal::GridPoint t{field->p(), e, cell.a};
            if (fractal::is_critical(tester, t)) {
                json entry;
                entry["a"] = json::array();
                for (const auto& ai : cell.a) entry["a"].push_back(ai.get_str());
                entry["q"] = t.q().get_str();
                entry["delta"] = arith::to_string(arith::Rational(ideal.deg_uv()) - t.norm());
                list.push_back(entry);
            }
        }
        json j;
        j["critical_points"] = list;
        j["field"] = field_to_json(*field);
        emit(j, crit_out);
        return 0;
    }

    if (grid_cmd->parsed()) {
        apply_env(grid_opts, grid_cmd->count("--E-max") > 0, grid_cmd->count("--cell-cap") > 0);
        auto field = gf::parse_field_spec(grid_opts.field_spec);
        auto ell = parse_system(field, grid_ell);
        auto ideal = parse_ideal(field, grid_ideal);
        unsigned e = exponent_of_q(field->p(), grid_q);
        auto box = parse_box(grid_box);
        if (box.size() != ell.size()) throw std::domain_error("box dimension must match --ell");
        std::vector<arith::Rational> lo, hi;
        for (auto& [l, h] : box) {
            lo.push_back(l);
            hi.push_back(h);
        }
        auto sweep = fractal::grid_sweep(ell, ideal, lo, hi, e, grid_opts.cell_cap);
        if (grid_format == "csv") {
            if (grid_out.empty()) {
                fractal::write_csv(sweep, std::cout);
            } else {
                auto out = open_binary(grid_out);
                fractal::write_csv(sweep, out);
            }
        } else if (grid_format == "pgm" || grid_format == "pgm5") {
            if (grid_out.empty()) throw std::domain_error("PGM output requires --out");
            auto out = open_binary(grid_out);
            fractal::write_pgm(sweep, out,
                               grid_mode == "region" ? fractal::PgmMode::region : fractal::PgmMode::delta,
                               grid_format == "pgm");
        } else {
            throw std::domain_error("unknown grid format " + grid_format);
        }
        return 0;
    }

    if (stair_cmd->parsed()) {
        apply_env(stair_opts, stair_cmd->count("--E-max") > 0, stair_cmd->count("--cell-cap") > 0);
        auto field = gf::parse_field_spec(stair_opts.field_spec);
        auto ell = parse_system(field, stair_ell);
        if (ell.size() != 3) throw std::domain_error("staircase rendering needs exactly three forms");
        auto ideal = parse_ideal(field, stair_ideal);
        unsigned e = exponent_of_q(field->p(), stair_q);
        const std::uint64_t side = stair_q * ideal.deg_uv();
        if ((side + 1) * (side + 1) > stair_opts.cell_cap)
            throw fractal::resource_error("staircase exceeds the cell cap");
        fractal::UpperTester tester(ell, ideal);
        // pixel (r, c) = point (a1, a2, a3)/q with a1 = c, a2 = r on the slice
        std::vector<std::vector<int>> bits(side + 1, std::vector<int>(side + 1, -1));
        for (std::uint64_t r = 0; r <= side; ++r) {
            for (std::uint64_t c = 0; c <= side; ++c) {
                if (r + c > side) continue;
                fractal::GridPoint t{field->p(), e,
                                     {arith::Integer(static_cast<unsigned long>(c)),
                                      arith::Integer(static_cast<unsigned long>(r)),
                                      arith::Integer(static_cast<unsigned long>(side - r - c))}};
                bits[r][c] = fractal::on_boundary_slice(tester, t) ? 1 : 0;
            }
        }
        if (stair_format == "csv") {
            std::ostream* outp = &std::cout;
            std::ofstream file;
            if (!stair_out.empty()) {
                file = open_binary(stair_out);
                outp = &file;
            }
            *outp << "a1,a2,a3,q,boundary\n";
            for (std::uint64_t r = 0; r <= side; ++r)
                for (std::uint64_t c = 0; c <= side; ++c)
                    if (bits[r][c] >= 0)
                        *outp << c << "," << r << "," << (side - r - c) << "," << stair_q << ","
                              << bits[r][c] << "\n";
        } else if (stair_format == "pgm" || stair_format == "pgm5") {
            if (stair_out.empty()) throw std::domain_error("PGM output requires --out");
            auto out = open_binary(stair_out);
            bool ascii = stair_format == "pgm";
            out << (ascii ? "P2" : "P5") << "\n" << (side + 1) << " " << (side + 1) << "\n255\n";
            for (std::uint64_t r = 0; r <= side; ++r) {
                std::vector<unsigned char> row;
                for (std::uint64_t c = 0; c <= side; ++c) {
                    unsigned char v = bits[r][c] < 0 ? 255 : (bits[r][c] == 1 ? 0 : 255);
                    if (ascii)
                        out << static_cast<unsigned>(v) << (c == side ? "" : " ");
                    else
                        row.push_back(v);
                }
                if (ascii)
                    out << "\n";
                else
                    out.write(reinterpret_cast<const char*>(row.data()),
                              static_cast<std::streamsize>(row.size()));
            }
        } else {
            throw std::domain_error("unknown staircase format " + stair_format);
        }
        return 0;
    }

    if (oracle_cmd->parsed()) {
        apply_env(oracle_opts, oracle_cmd->count("--E-max") > 0, oracle_cmd->count("--cell-cap") > 0);
        auto field = gf::parse_field_spec(oracle_opts.field_spec);
        auto g = poly::parse_form(oracle_poly, field);
        auto ideal = parse_ideal(field, oracle_ideal);
        json rows = json::array();
        for (unsigned e = 1; e <= oracle_e; ++e) {
            arith::Integer nu = fpt::nu_oracle(g, ideal, e, oracle_opts.config());
            arith::Integer q;
            mpz_ui_pow_ui(q.get_mpz_t(), field->p(), e);
            rows.push_back(json{{"e", e},
                                {"nu", nu.get_str()},
                                {"nu_over_q", arith::to_string(arith::make_rational(nu, q))}});
        }
        json j;
        j["table"] = rows;
        j["field"] = field_to_json(*field);
        emit(j, oracle_out);
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const sgf::fractal::resource_error& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
