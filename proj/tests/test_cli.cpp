#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "mgcn/io.hpp"
#include "mgcn/runconfig.hpp"

using namespace mgcn;

namespace {

struct RunOutput {
    int exit_code = -1;
    std::string stdout_text;
};

RunOutput run_cli(const std::string& args) {
    const std::string out_path = "cli_stdout.txt";
    const std::string cmd = std::string(MGCN_CLI_PATH) + " " + args + " > " +
                            out_path + " 2> cli_stderr.txt";
    const int status = std::system(cmd.c_str());
    RunOutput out;
    out.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream is(out_path);
    std::string line;
    while (std::getline(is, line)) {
        out.stdout_text += line;
        out.stdout_text += '\n';
    }
    return out;
}

} // namespace

TEST_CASE("synth then stats is self-consistent") {
    RunOutput synth = run_cli(
        "synth --seed 7 --instances 12 --entities 16 --relations 4 "
        "--triples 5 --out cli_corpus.jsonl");
    REQUIRE(synth.exit_code == 0);
    RunOutput stats = run_cli("stats --in cli_corpus.jsonl");
    REQUIRE(stats.exit_code == 0);
    CHECK(stats.stdout_text.find("instances: 12") != std::string::npos);
    CHECK(stats.stdout_text.find("avg_triples_per_input: 5") !=
          std::string::npos);
}

TEST_CASE("synth is byte-deterministic through the CLI") {
    RunOutput a = run_cli(
        "synth --seed 9 --instances 5 --entities 8 --relations 2 "
        "--triples 3 --out cli_synth_a.jsonl");
    RunOutput b = run_cli(
        "synth --seed 9 --instances 5 --entities 8 --relations 2 "
        "--triples 3 --out cli_synth_b.jsonl");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(read_file("cli_synth_a.jsonl") == read_file("cli_synth_b.jsonl"));
}

TEST_CASE("transform dumps node tables, with and without levi") {
    RunOutput full = run_cli("transform --in cli_corpus.jsonl");
    REQUIRE(full.exit_code == 0);
    CHECK(full.stdout_text.find("# instance 0") != std::string::npos);
    CHECK(full.stdout_text.find("<global>\tglobal") != std::string::npos);
    CHECK(full.stdout_text.find("default2") != std::string::npos);

    RunOutput levi = run_cli("transform --in cli_corpus.jsonl --levi");
    REQUIRE(levi.exit_code == 0);
    CHECK(levi.stdout_text.find("edges") != std::string::npos);
    CHECK(levi.stdout_text.find("<global>") == std::string::npos);
}

TEST_CASE("usage errors exit with 1, data errors with 2") {
    CHECK(run_cli("stats").exit_code == 1);          // missing required flag
    CHECK(run_cli("nonsense").exit_code == 1);       // unknown subcommand
    CHECK(run_cli("stats --in missing_file.jsonl").exit_code == 2);
}

TEST_CASE("unknown config keys are rejected") {
    write_file("cli_bad.conf", "hidden = 8\nunknown_key = 1\n");
    RunOutput r = run_cli(
        "train --config cli_bad.conf --train cli_corpus.jsonl "
        "--valid cli_corpus.jsonl --out cli_bad.ckpt");
    CHECK(r.exit_code == 2);
}

TEST_CASE("train, manifest, epoch log and deterministic generation") {
    write_file("cli_train.conf",
               "hidden = 8\nlayers = 1\nbatch_size = 4\nmax_epochs = 3\n"
               "patience = 3\nbeam = 2\nmax_len = 12\nseed = 5\n");
    RunOutput t1 = run_cli(
        "train --config cli_train.conf --train cli_corpus.jsonl "
        "--valid cli_corpus.jsonl --out cli_a.ckpt");
    REQUIRE(t1.exit_code == 0);
    CHECK(t1.stdout_text.find("best_val_perplexity") != std::string::npos);

    RunOutput t2 = run_cli(
        "train --config cli_train.conf --train cli_corpus.jsonl "
        "--valid cli_corpus.jsonl --out cli_b.ckpt");
    REQUIRE(t2.exit_code == 0);
    CHECK(read_file("cli_a.ckpt") == read_file("cli_b.ckpt"));

    // the manifest echoes every effective value and is itself a config file
    const std::string manifest = read_file("cli_a.ckpt.manifest");
    CHECK(manifest.find("hidden = 8") != std::string::npos);
    CHECK(manifest.find("aggregation = sum") != std::string::npos);
    CHECK(manifest.find("seed = 5") != std::string::npos);
    CHECK(manifest.find("train = cli_corpus.jsonl") != std::string::npos);
    RunConfig reparsed = RunConfig::from_file("cli_a.ckpt.manifest");
    CHECK(reparsed.train.hidden == 8);
    CHECK(reparsed.train.seed == 5);

    const std::string log = read_file("cli_a.ckpt.log");
    CHECK(log.find("1\t") == 0); // one line per epoch

    // manifest-driven retraining reproduces the checkpoint bytes
    RunOutput t3 = run_cli("train --config cli_a.ckpt.manifest --out cli_c.ckpt");
    REQUIRE(t3.exit_code == 0);
    CHECK(read_file("cli_a.ckpt") == read_file("cli_c.ckpt"));

    RunOutput g1 = run_cli(
        "generate --checkpoint cli_a.ckpt --in cli_corpus.jsonl "
        "--out cli_gen_a.txt");
    REQUIRE(g1.exit_code == 0);
    RunOutput g2 = run_cli(
        "generate --checkpoint cli_a.ckpt --in cli_corpus.jsonl "
        "--out cli_gen_b.txt");
    REQUIRE(g2.exit_code == 0);
    CHECK(read_file("cli_gen_a.txt") == read_file("cli_gen_b.txt"));

    auto lines = load_token_lines("cli_gen_a.txt");
    CHECK(lines.size() == 12);
}

TEST_CASE("delexicalized training relexicalizes generated output") {
    write_file("cli_delex.conf",
               "hidden = 16\nlayers = 1\nbatch_size = 8\nmax_epochs = 60\n"
               "patience = 60\nbeam = 4\nmax_len = 12\nseed = 11\n"
               "delex = on\ninit_range = 0.2\n");
    RunOutput t = run_cli(
        "train --config cli_delex.conf --train cli_corpus.jsonl "
        "--valid cli_corpus.jsonl --out cli_delex.ckpt");
    REQUIRE(t.exit_code == 0);
    RunOutput g = run_cli(
        "generate --checkpoint cli_delex.ckpt --in cli_corpus.jsonl "
        "--out cli_delex_gen.txt");
    REQUIRE(g.exit_code == 0);
    const std::string out = read_file("cli_delex_gen.txt");
    // placeholders must be substituted away on the way out
    CHECK(out.find("MAIN_0") == std::string::npos);
    CHECK(out.find("TOPIC_") == std::string::npos);
}

TEST_CASE("evaluate emits a structured report") {
    write_file("cli_cand.txt", "a b c d\nx y\n");
    write_file("cli_ref.txt", "a b c d\nx z\n");
    RunOutput r = run_cli(
        "evaluate --candidates cli_cand.txt --references cli_ref.txt");
    REQUIRE(r.exit_code == 0);
    CHECK(r.stdout_text.find("\"bleu\"") != std::string::npos);
    CHECK(r.stdout_text.find("\"rougeL\"") != std::string::npos);

    write_file("cli_short.txt", "a\n");
    CHECK(run_cli("evaluate --candidates cli_short.txt "
                  "--references cli_ref.txt")
              .exit_code == 2);
}

TEST_CASE("gradcheck exits zero under the threshold") {
    RunOutput r = run_cli("gradcheck");
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("max_relative_error") != std::string::npos);
}
