#pragma once

#include <fstream>
#include <iomanip>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "dercomb/corpus.hpp"
#include "dercomb/io.hpp"

namespace dercomb::cli {

enum Exit : int { ok = 0, verification_failed = 1, input_error = 2 };

namespace detail {

inline void print_table(const VerificationReport& r, std::ostream& out) {
    std::size_t width = 0;
    for (const auto& c : r.claims) width = std::max(width, c.id.size());
    for (const auto& c : r.claims) {
        out << (c.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(width)) << c.id << "  "
            << std::right << std::fixed << std::setprecision(1) << std::setw(8) << c.elapsed_ms << " ms";
        if (!c.pass) out << "  " << c.witness;
        out << "\n";
    }
    out << r.passed << " passed, " << r.failed << " failed, " << r.claims.size() << " total\n";
}

/// A FinCat file is turned into its nerve at `trunc`; an SSet file is used as is.
inline SSet load_sset_or_nerve(const std::string& path, int trunc) {
    io::json j = io::read_json_file(path);
    if (j.is_object() && j.contains("truncation")) return io::sset_from_json(j);
    return nerve(io::fincat_from_json(j), trunc);
}

inline io::json sset_report(const SSet& x) {
    io::json j = io::to_json(x);
    j["nondegenerate"] = nondegenerate_counts(x);
    return j;
}

inline Label parse_label(const std::string& s) {
    try {
        return io::label_from_json(io::json::parse(s));
    } catch (const io::json::exception&) {
        return Label(s);
    }
}

} // namespace detail

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Build and check finite categories, simplicial sets and K0 presentations"};
    app.require_subcommand(1);

    CorpusOptions vopt;
    vopt.jobs = std::max(1u, std::thread::hardware_concurrency());
    std::string report_path;
    auto* verify = app.add_subcommand("verify", "Run the claim corpus");
    verify->add_option("--max-n", vopt.max_n, "Largest n for the S_n claims")->capture_default_str();
    verify->add_option("--filter", vopt.filter, "Only claims whose id starts with PREFIX");
    verify->add_option("--report", report_path, "Write the JSON report to FILE");
    verify->add_option("--jobs", vopt.jobs, "Concurrent claims")->check(CLI::PositiveNumber);
    verify->add_option("--seed", vopt.seed, "Seed for randomized suites")->capture_default_str();

    std::string file;
    int dim = 1;
    std::string object;
    auto* k0 = app.add_subcommand("k0", "Grothendieck group of a presentation");
    k0->add_option("FILE", file)->required();
    auto* nerve_cmd = app.add_subcommand("nerve", "Nerve of a category");
    nerve_cmd->add_option("FILE", file)->required();
    nerve_cmd->add_option("--dim", dim)->required()->check(CLI::NonNegativeNumber);
    auto* sub2_cmd = app.add_subcommand("sub2", "Edgewise subdivision of a simplicial set or nerve");
    sub2_cmd->add_option("FILE", file)->required();
    sub2_cmd->add_option("--dim", dim)->required()->check(CLI::NonNegativeNumber);
    auto* cyl_cmd = app.add_subcommand("cylinder", "Cylinder of a simplicial set or nerve");
    cyl_cmd->add_option("FILE", file)->required();
    cyl_cmd->add_option("--dim", dim)->required()->check(CLI::NonNegativeNumber);
    auto* comma_cmd = app.add_subcommand("comma", "Comma category (u/k) of a functor");
    comma_cmd->add_option("FILE", file)->required();
    comma_cmd->add_option("--object", object, "Object k, as JSON or a bare string")->required();
    auto* classify_cmd = app.add_subcommand("classify", "Sieve/cosieve classification of a functor");
    classify_cmd->add_option("FILE", file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return input_error;
    }

    try {
        if (*verify) {
            VerificationReport r = verify_corpus(vopt);
            detail::print_table(r, out);
            if (!report_path.empty()) {
                std::ofstream f(report_path);
                if (!f) throw InputError("cannot write " + report_path);
                f << io::to_json(r).dump(2) << "\n";
            }
            return r.all_pass() ? ok : verification_failed;
        }
        if (*k0) {
            out << io::to_json(k0_group(io::k0_from_json(io::read_json_file(file)))).dump(2) << "\n";
            return ok;
        }
        if (*nerve_cmd) {
            out << detail::sset_report(nerve(io::fincat_from_json(io::read_json_file(file)), dim)).dump(2) << "\n";
            return ok;
        }
        if (*sub2_cmd) {
            out << detail::sset_report(sub2(detail::load_sset_or_nerve(file, 2 * dim + 1), dim)).dump(2) << "\n";
            return ok;
        }
        if (*cyl_cmd) {
            out << detail::sset_report(cylinder(detail::load_sset_or_nerve(file, 2 * dim + 1), dim).space).dump(2) << "\n";
            return ok;
        }
        if (*comma_cmd) {
            Functor u = io::functor_from_json(io::read_json_file(file));
            out << io::to_json(comma(u, detail::parse_label(object)), u).dump(2) << "\n";
            return ok;
        }
        if (*classify_cmd) {
            out << io::to_json(classify_inclusion(io::functor_from_json(io::read_json_file(file)))).dump(2) << "\n";
            return ok;
        }
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
    } catch (const LawViolation& e) {
        err << "invalid input: " << e.what() << "\n";
    } catch (const TruncationError& e) {
        err << "truncation error: " << e.what() << "\n";
    } catch (const io::json::exception& e) {
        err << "format error: " << e.what() << "\n";
    }
    return input_error;
}

} // namespace dercomb::cli
