// tminimal: build tubed-surface models, certify them, compute homology.
//
// Exit codes: 0 success, 1 certificate FAILED, 2 invalid input, 3 resource cap.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tminimal/io_json.hpp"

namespace fs = std::filesystem;
using namespace tminimal;

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitCap = 3;

struct InvalidConfig : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    int genus = 1;
    int tubes = 1;
    int arc_bound = 3;
    int depth = 2;
    int band_bound = 1;
    int max_copies = 2;
    std::string out = ".";
    std::uint64_t seed = 0;
    std::size_t max_simplices = kDefaultMaxSimplices;
    std::size_t max_disks = CatalogBounds{}.max_disks;
    std::size_t max_arcs = kDefaultMaxArcs;
    std::string disks_file;

    CatalogBounds bounds() const {
        CatalogBounds b;
        b.arc_bound = arc_bound;
        b.band_bound = band_bound;
        b.depth = depth;
        b.max_copies = max_copies;
        b.max_arcs = max_arcs;
        b.max_disks = max_disks;
        return b;
    }

    void validate(int min_tubes) const {
        if (genus < 1) throw InvalidConfig("--genus must be >= 1");
        if (tubes < min_tubes) throw InvalidConfig("--tubes must be >= " + std::to_string(min_tubes));
        if (arc_bound < 1) throw InvalidConfig("--arc-bound must be >= 1");
        if (depth < 0) throw InvalidConfig("--bandsum-depth must be >= 0");
        if (band_bound < 1) throw InvalidConfig("--band-bound must be >= 1");
        if (max_copies < 1) throw InvalidConfig("--max-copies must be >= 1");
    }
};

void add_common(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--genus", cfg.genus, "genus of the base surface F (>= 1)");
    cmd->add_option("--tubes", cfg.tubes, "number of tubes n");
    cmd->add_option("--arc-bound", cfg.arc_bound, "longest vertical arc code (>= 1)");
    cmd->add_option("--bandsum-depth", cfg.depth, "band sum nesting bound (>= 0)");
    cmd->add_option("--band-bound", cfg.band_bound, "longest band arc code (>= 1)");
    cmd->add_option("--max-copies", cfg.max_copies, "parallel meridian copies per band sum (>= 1)");
    cmd->add_option("--out", cfg.out, "output directory");
    cmd->add_option("--seed", cfg.seed, "seed recorded with the outputs");
    cmd->add_option("--max-simplices", cfg.max_simplices, "cap on simplices per dimension");
    cmd->add_option("--max-disks", cfg.max_disks, "cap on cataloged disks");
    cmd->add_option("--max-arcs", cfg.max_arcs, "cap on cataloged arcs");
}

fs::path prepare_out(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw InvalidConfig("cannot create output directory '" + dir + "'");
    return fs::path(dir);
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw InvalidConfig("cannot write '" + p.string() + "'");
    f << text;
    if (!f) throw InvalidConfig("cannot write '" + p.string() + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InvalidConfig("cannot read '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

int cmd_build(const RunConfig& cfg) {
    cfg.validate(1);
    fs::path out = prepare_out(cfg.out);
    DiskCatalog c(build_tubed_surface(cfg.genus, cfg.tubes), cfg.bounds());
    Json surface = to_json(c.surface());
    surface["seed"] = cfg.seed;
    write_file(out / "surface.json", surface.dump(2) + "\n");
    write_file(out / "arcs.json", arcs_to_json(c.surface().region(1), cfg.arc_bound, c.arcs()).dump(2) + "\n");
    write_file(out / "disks.json", catalog_to_json(c).dump(2) + "\n");
    std::cout << "F_" << cfg.tubes << " genus " << c.surface().genus() << ": " << c.arcs().size() << " arcs, "
              << c.size() << " disks -> " << out.string() << "\n";
    return 0;
}

int cmd_certify(const RunConfig& cfg) {
    cfg.validate(0);
    fs::path out = prepare_out(cfg.out);
    CertifyOptions opt;
    opt.genus = cfg.genus;
    opt.n = cfg.tubes;
    opt.bounds = cfg.bounds();
    opt.max_simplices = cfg.max_simplices;
    if (!cfg.disks_file.empty()) {
        Json j = parse_json(read_file(cfg.disks_file), cfg.disks_file);
        opt.disks = disks_from_json(j, build_tubed_surface(cfg.genus, cfg.tubes + 1));
    }
    auto emit = [&](const Certificate& cert) {
        Json j = to_json(cert);
        j["parameters"]["seed"] = cfg.seed;
        write_file(out / "certificate.json", j.dump(2) + "\n");
        std::string text = report_text(cert);
        write_file(out / "report.txt", text);
        std::cout << text;
    };
    try {
        Certificate cert = certify_minimality(opt);
        emit(cert);
        return cert.passed ? 0 : kExitFailed;
    } catch (const CertificationCapError& e) {
        emit(e.partial());
        std::cerr << "resource cap: " << e.what() << "\n";
        return kExitCap;
    }
}

int cmd_homology(const std::string& file, int d_max, bool as_json, std::size_t max_simplices) {
    FlagComplex c = complex_from_json(parse_json(read_file(file), file));
    if (d_max < 0) {
        // top dimension of the complex
        auto cells = flag_cliques_by_dimension(c, static_cast<int>(c.size()), max_simplices);
        d_max = 0;
        for (std::size_t k = 0; k < cells.size(); ++k)
            if (!cells[k].empty()) d_max = static_cast<int>(k);
    }
    HomologyProfile h = reduced_homology(c, d_max, max_simplices);
    if (as_json) {
        std::cout << Json{{"reduced_homology", to_json(h)}}.dump(2) << "\n";
    } else {
        for (std::size_t k = 0; k < h.groups.size(); ++k) std::cout << "dim " << k << ": " << h[k].to_string() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tubed surfaces, their disk complexes and retraction certificates"};
    app.require_subcommand(1);

    RunConfig build_cfg, cert_cfg;
    cert_cfg.tubes = 0;
    auto* build = app.add_subcommand("build", "write surface.json, arcs.json and disks.json for F_n");
    add_common(build, build_cfg);
    auto* certify = app.add_subcommand("certify", "certify F_{n+1} and write certificate.json and report.txt");
    add_common(certify, cert_cfg);
    certify->add_option("--disks", cert_cfg.disks_file, "use this disks.json instead of generating a catalog");

    std::string complex_file;
    int d_max = -1;
    bool as_json = false;
    std::size_t hom_cap = kDefaultMaxSimplices;
    auto* homology = app.add_subcommand("homology", "reduced integral homology of a complex.json");
    homology->add_option("file", complex_file, "complex JSON file")->required();
    homology->add_option("--dmax", d_max, "highest dimension (default: top dimension)");
    homology->add_flag("--json", as_json, "print JSON");
    homology->add_option("--max-simplices", hom_cap, "cap on simplices per dimension");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (*build) return cmd_build(build_cfg);
        if (*certify) return cmd_certify(cert_cfg);
        if (*homology) return cmd_homology(complex_file, d_max, as_json, hom_cap);
    } catch (const InvalidConfig& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const ResourceCapError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return kExitCap;
    } catch (const CatalogCapError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return kExitCap;
    } catch (const ResourceLimitError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return kExitCap;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}
