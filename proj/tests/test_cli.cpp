// End-to-end checks of the command-line tool. Each case spawns the real
// binary (path injected via ECPRBG_CLI_PATH) inside a scratch directory.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "ecprbg/imagecipher.hpp"
#include "ecprbg/sha256.hpp"
#include "json.hpp"
#include "support.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

const fs::path& work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "ecprbg_cli_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out_file = work_dir() / ("stdout." + std::to_string(counter));
    const fs::path err_file = work_dir() / ("stderr." + std::to_string(counter));
    ++counter;

    const std::string cmd = std::string(ECPRBG_CLI_PATH) + " " + args + " > " + out_file.string() +
                            " 2> " + err_file.string();
    const int status = std::system(cmd.c_str());

    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_file);
    r.err = slurp(err_file);
    return r;
}

fs::path wpath(const std::string& name) { return work_dir() / name; }

}  // namespace

// --------------------------------------------------------------- curve-info

TEST_CASE("cli: curve-info describes the default setup") {
    RunResult r = run_cli("curve-info");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("curve: y^2 = x^3 + 4x + 1 over F_503") != std::string::npos);
    CHECK(r.out.find("cardinality: 516") != std::string::npos);
    CHECK(r.out.find("generator: (283, 315) on curve") != std::string::npos);
    CHECK(r.out.find("order: 129 (verified)") != std::string::npos);
}

TEST_CASE("cli: curve-info on the small curve") {
    RunResult r = run_cli("curve-info --p 29 --a 1 --b 4 --gx 3 --gy 11 --order 11");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("cardinality: 33") != std::string::npos);
    CHECK(r.out.find("order: 11 (verified)") != std::string::npos);
}

TEST_CASE("cli: curve-info rejects bad parameters with exit 2") {
    CHECK(run_cli("curve-info --p 29 --a 0 --b 0 --gx 3 --gy 11 --order 11").exit_code == 2);
    CHECK(run_cli("curve-info --p 15").exit_code == 2);     // composite modulus
    CHECK(run_cli("curve-info --gy 316").exit_code == 2);   // point off the curve
    CHECK(run_cli("curve-info --order 128").exit_code == 2);

    RunResult singular = run_cli("curve-info --p 29 --a 0 --b 0 --gx 3 --gy 11 --order 11");
    CHECK(singular.err.find("singular") != std::string::npos);
}

TEST_CASE("cli: usage errors exit 1") {
    CHECK(run_cli("").exit_code == 1);                    // subcommand required
    CHECK(run_cli("frobnicate").exit_code == 1);
    CHECK(run_cli("curve-info --no-such-flag").exit_code == 1);
    CHECK(run_cli("generate --bits 128").exit_code == 1);  // --out missing
    CHECK(run_cli("--help").exit_code == 0);
}

// ----------------------------------------------------------------- generate

TEST_CASE("cli: generate writes the requested bits plus a sidecar") {
    const fs::path out = wpath("g1.bin");
    RunResult r = run_cli("generate --seed 00ff --bits 1024 --out " + out.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("wrote 1024 bits (raw) to") != std::string::npos);
    CHECK(fs::file_size(out) == 128);

    nlohmann::json meta = nlohmann::json::parse(slurp(out.string() + ".meta.json"));
    CHECK(meta["bits"] == 1024);
    CHECK(meta["format"] == "raw");
    CHECK(meta["trunc_bits"] == 128);
    CHECK(meta["curve"]["p"] == 503);
    CHECK(meta["curve"]["order"] == 129);
    std::vector<std::uint8_t> seed{0x00, 0xff};
    CHECK(meta["seed_sha256"] == ecprbg::to_hex(ecprbg::Sha256::digest(seed)));
}

TEST_CASE("cli: generate is deterministic across processes") {
    const fs::path a = wpath("det_a.bin");
    const fs::path b = wpath("det_b.bin");
    REQUIRE(run_cli("generate --seed 0badc0de --bits 4096 --out " + a.string()).exit_code == 0);
    REQUIRE(run_cli("generate --seed 0badc0de --bits 4096 --out " + b.string()).exit_code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(!slurp(a).empty());
}

TEST_CASE("cli: generate ascii format") {
    const fs::path out = wpath("g2.txt");
    RunResult r = run_cli("generate --seed ab --bits 100 --format ascii --out " + out.string());
    CHECK(r.exit_code == 0);
    std::string text = slurp(out);
    std::size_t digits = 0;
    for (char c : text) {
        if (c == '0' || c == '1') ++digits;
        else CHECK(c == '\n');
    }
    CHECK(digits == 100);
    CHECK(text.find('\n') == 64);  // 64-digit lines

    // Matches the raw form of the same seed bit for bit.
    const fs::path raw = wpath("g2.bin");
    REQUIRE(run_cli("generate --seed ab --bits 100 --out " + raw.string()).exit_code == 0);
    std::string raw_bytes = slurp(raw);
    ecprbg::BitStream from_raw = ecprbg::BitStream::from_bytes(
        std::vector<std::uint8_t>(raw_bytes.begin(), raw_bytes.end()), 100);
    CHECK(ecprbg::BitStream::from_ascii(text) == from_raw);
}

TEST_CASE("cli: generate seed validation") {
    CHECK(run_cli("generate --bits 64 --out " + wpath("x.bin").string()).exit_code == 1);
    CHECK(run_cli("generate --seed abc --bits 64 --out " + wpath("x.bin").string()).exit_code ==
          2);  // odd-length hex
    CHECK(run_cli("generate --seed zz --bits 64 --out " + wpath("x.bin").string()).exit_code == 2);
    CHECK(run_cli("generate --seed 00 --random-seed --bits 64 --out " +
                  wpath("x.bin").string())
              .exit_code == 1);  // mutually exclusive
    CHECK(run_cli("generate --seed 00 --trunc-bits 0 --bits 64 --out " +
                  wpath("x.bin").string())
              .exit_code == 2);
}

TEST_CASE("cli: generate with --random-seed prints the seed") {
    RunResult r = run_cli("generate --random-seed --bits 64 --out " + wpath("rnd.bin").string());
    CHECK(r.exit_code == 0);
    std::size_t pos = r.out.find("seed: ");
    REQUIRE(pos != std::string::npos);
    std::string hex = r.out.substr(pos + 6, 64);
    CHECK(hex.size() == 64);
    CHECK(hex.find_first_not_of("0123456789abcdef") == std::string::npos);
}

TEST_CASE("cli: generate io failure exits 3") {
    CHECK(run_cli("generate --seed 00 --bits 64 --out /nonexistent-dir/x.bin").exit_code == 3);
}

// --------------------------------------------------------------------- test

TEST_CASE("cli: battery run over a generated file") {
    const fs::path stream = wpath("t1.bin");
    REQUIRE(run_cli("generate --seed 00ff --bits 1048576 --out " + stream.string()).exit_code == 0);

    RunResult r = run_cli("test --in " + stream.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("randomness battery over 1048576 bits") != std::string::npos);
    CHECK(r.out.find("frequency") != std::string::npos);
    CHECK(r.out.find("overall:") != std::string::npos);

    nlohmann::json report = nlohmann::json::parse(slurp(stream.string() + ".report.json"));
    CHECK(report["stream_length"] == 1048576);
    CHECK(report["results"].size() == 13);
}

TEST_CASE("cli: short stream keeps exit 0 without --strict, 4 with it") {
    const fs::path stream = wpath("t2.bin");
    REQUIRE(run_cli("generate --seed 01 --bits 4096 --out " + stream.string()).exit_code == 0);

    CHECK(run_cli("test --in " + stream.string()).exit_code == 0);
    // 4096 bits leave the rank test skipped, so all_passed is false.
    CHECK(run_cli("test --strict --in " + stream.string()).exit_code == 4);

    nlohmann::json report = nlohmann::json::parse(slurp(stream.string() + ".report.json"));
    CHECK(report["all_passed"] == false);
}

TEST_CASE("cli: strict failure on a constant stream") {
    const fs::path zeros = wpath("zeros.bin");
    {
        std::ofstream out(zeros, std::ios::binary);
        std::vector<char> buf(2048, 0);
        out.write(buf.data(), std::streamsize(buf.size()));
    }
    RunResult r = run_cli("test --strict --in " + zeros.string());
    CHECK(r.exit_code == 4);
    CHECK(r.out.find("FAIL") != std::string::npos);
}

TEST_CASE("cli: ascii input is detected automatically") {
    const fs::path ascii = wpath("t3.txt");
    const fs::path raw = wpath("t3.bin");
    REQUIRE(run_cli("generate --seed 0c0c --bits 8192 --format ascii --out " + ascii.string())
                .exit_code == 0);
    REQUIRE(run_cli("generate --seed 0c0c --bits 8192 --out " + raw.string()).exit_code == 0);
    fs::remove(ascii.string() + ".meta.json");  // force content sniffing

    REQUIRE(run_cli("test --in " + ascii.string()).exit_code == 0);
    REQUIRE(run_cli("test --in " + raw.string()).exit_code == 0);

    nlohmann::json a = nlohmann::json::parse(slurp(ascii.string() + ".report.json"));
    nlohmann::json b = nlohmann::json::parse(slurp(raw.string() + ".report.json"));
    CHECK(a["stream_length"] == 8192);
    CHECK(a["results"] == b["results"]);
}

TEST_CASE("cli: --bits overrides the sidecar length") {
    const fs::path stream = wpath("t4.bin");
    REQUIRE(run_cli("generate --seed 11 --bits 4096 --out " + stream.string()).exit_code == 0);

    const fs::path json_out = wpath("t4.json");
    REQUIRE(run_cli("test --in " + stream.string() + " --bits 1000 --json " + json_out.string())
                .exit_code == 0);
    nlohmann::json report = nlohmann::json::parse(slurp(json_out));
    CHECK(report["stream_length"] == 1000);
}

TEST_CASE("cli: test on a missing file exits 3") {
    CHECK(run_cli("test --in " + wpath("no-such-file.bin").string()).exit_code == 3);
}

// ---------------------------------------------------------- encrypt/decrypt

TEST_CASE("cli: image round trip through files") {
    const fs::path plain = wpath("plain.pgm");
    const fs::path cipher = wpath("cipher.pgm");
    const fs::path back = wpath("back.pgm");
    ecprbg::write_pgm(plain.string(), ecprbg::testsupport::make_test_image(64, 48));

    RunResult enc = run_cli("encrypt --seed 0abc --in " + plain.string() + " --out " +
                            cipher.string());
    CHECK(enc.exit_code == 0);
    CHECK(enc.out.find("encrypted 64x48 image") != std::string::npos);

    std::vector<std::string> comments;
    ecprbg::GrayImage cipher_img = ecprbg::read_pgm(cipher.string(), &comments);
    REQUIRE(comments.size() == 1);
    CHECK(comments[0].rfind("keymat ", 0) == 0);
    CHECK(comments[0].size() == 7 + 64);

    RunResult dec = run_cli("decrypt --seed 0abc --in " + cipher.string() + " --out " +
                            back.string());
    CHECK(dec.exit_code == 0);
    CHECK(dec.err.empty());
    CHECK(slurp(back) == slurp(plain));  // byte-identical files
}

TEST_CASE("cli: wrong-seed decryption warns and differs") {
    const fs::path plain = wpath("plain2.pgm");
    const fs::path cipher = wpath("cipher2.pgm");
    const fs::path back = wpath("back2.pgm");
    ecprbg::write_pgm(plain.string(), ecprbg::testsupport::make_test_image(32, 32));

    REQUIRE(run_cli("encrypt --seed 0abc --in " + plain.string() + " --out " + cipher.string())
                .exit_code == 0);
    RunResult dec = run_cli("decrypt --seed 1234 --in " + cipher.string() + " --out " +
                            back.string());
    CHECK(dec.exit_code == 0);  // still writes, but warns
    CHECK(dec.err.find("warning") != std::string::npos);
    CHECK(slurp(back) != slurp(plain));
}

TEST_CASE("cli: decrypt requires a keymat header and a fixed seed") {
    const fs::path plain = wpath("plain3.pgm");
    ecprbg::write_pgm(plain.string(), ecprbg::testsupport::make_test_image(8, 8));

    RunResult r = run_cli("decrypt --seed 0abc --in " + plain.string() + " --out " +
                          wpath("x.pgm").string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("keymat") != std::string::npos);

    CHECK(run_cli("decrypt --random-seed --in " + plain.string() + " --out " +
                  wpath("x.pgm").string())
              .exit_code == 1);
}

TEST_CASE("cli: encrypt on a missing image exits 3") {
    CHECK(run_cli("encrypt --seed 00 --in " + wpath("ghost.pgm").string() + " --out " +
                  wpath("out.pgm").string())
              .exit_code == 3);
}

// ------------------------------------------------------------------ analyze

TEST_CASE("cli: analyze reports plain and cipher metrics") {
    const fs::path plain = wpath("ana_plain.pgm");
    const fs::path cipher = wpath("ana_cipher.pgm");
    ecprbg::write_pgm(plain.string(), ecprbg::testsupport::make_test_image(64, 64));
    REQUIRE(run_cli("encrypt --seed feed --in " + plain.string() + " --out " + cipher.string())
                .exit_code == 0);

    RunResult r = run_cli("analyze --plain " + plain.string() + " --cipher " + cipher.string());
    CHECK(r.exit_code == 0);
    nlohmann::json doc = nlohmann::json::parse(r.out);
    CHECK(doc["plain"]["entropy"].is_number());
    CHECK(doc["plain"]["corr_horizontal"].get<double>() > 0.85);
    CHECK(doc["cipher"]["entropy"].get<double>() > 7.9);
    CHECK(doc["cipher"]["npcr"].is_null());

    const fs::path json_out = wpath("ana.json");
    RunResult r2 = run_cli("analyze --plain " + plain.string() + " --cipher " + cipher.string() +
                           " --json " + json_out.string());
    CHECK(r2.exit_code == 0);
    CHECK(nlohmann::json::parse(slurp(json_out)) == nlohmann::json::parse(r2.out));
}

TEST_CASE("cli: analyze with a second cipher adds npcr/uaci") {
    const fs::path plain = wpath("ana2_plain.pgm");
    const fs::path plain_mod = wpath("ana2_plain_mod.pgm");
    const fs::path c1 = wpath("ana2_c1.pgm");
    const fs::path c2 = wpath("ana2_c2.pgm");

    ecprbg::GrayImage img = ecprbg::testsupport::make_test_image(64, 64);
    ecprbg::write_pgm(plain.string(), img);
    img.pixels[100] = std::uint8_t(img.pixels[100] ^ 1);
    ecprbg::write_pgm(plain_mod.string(), img);

    REQUIRE(run_cli("encrypt --seed beef --in " + plain.string() + " --out " + c1.string())
                .exit_code == 0);
    REQUIRE(run_cli("encrypt --seed beef --in " + plain_mod.string() + " --out " + c2.string())
                .exit_code == 0);

    RunResult r = run_cli("analyze --plain " + plain.string() + " --cipher " + c1.string() +
                          " --cipher2 " + c2.string());
    CHECK(r.exit_code == 0);
    nlohmann::json doc = nlohmann::json::parse(r.out);
    CHECK(doc["cipher"]["npcr"].is_number());
    CHECK(doc["cipher"]["uaci"].is_number());
}

// ------------------------------------------------------------- config files

TEST_CASE("cli: config file supplies defaults, flags win") {
    const fs::path cfg = wpath("small.cfg");
    {
        std::ofstream out(cfg);
        out << "# the 33-point curve\n"
            << "p=29\na=1\nb=4\ngx=3\ngy=11\norder=11\n";
    }

    RunResult from_cfg = run_cli("curve-info --config " + cfg.string());
    CHECK(from_cfg.exit_code == 0);
    CHECK(from_cfg.out.find("cardinality: 33") != std::string::npos);

    RunResult overridden = run_cli("curve-info --config " + cfg.string() +
                                   " --p 503 --a 4 --b 1 --gx 283 --gy 315 --order 129");
    CHECK(overridden.exit_code == 0);
    CHECK(overridden.out.find("cardinality: 516") != std::string::npos);

    const fs::path bad = wpath("bad.cfg");
    {
        std::ofstream out(bad);
        out << "frobnicate=1\n";
    }
    CHECK(run_cli("curve-info --config " + bad.string()).exit_code == 1);
    CHECK(run_cli("curve-info --config " + wpath("missing.cfg").string()).exit_code != 0);

    // A config file can drive generation end to end.
    const fs::path gen_out = wpath("cfg_gen.bin");
    RunResult gen = run_cli("generate --config " + cfg.string() + " --seed 77 --bits 256 --out " +
                            gen_out.string());
    CHECK(gen.exit_code == 0);
    nlohmann::json meta = nlohmann::json::parse(slurp(gen_out.string() + ".meta.json"));
    CHECK(meta["curve"]["p"] == 29);
    CHECK(meta["curve"]["order"] == 11);
}
