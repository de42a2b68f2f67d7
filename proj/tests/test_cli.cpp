#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "spikenum/numeral.hpp"
#include "spikenum/raster.hpp"
#include "spikenum/spike_codecs.hpp"

using namespace spikenum;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_shell(const std::string& cmd)
{
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    char buffer[4096];
    std::size_t read = 0;
    while ((read = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
        result.out.append(buffer, read);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

RunResult run(const std::string& args)
{
    return run_shell(std::string(SPIKENUM_CLI_PATH) + " " + args + " 2>/dev/null");
}

std::string trimmed(std::string text)
{
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
        text.pop_back();
    }
    return text;
}

class TempFile {
public:
    explicit TempFile(const std::string& contents)
    {
        static int counter = 0;
        path_ = (std::filesystem::temp_directory_path() /
                 ("spikenum_cli_" + std::to_string(getpid()) + "_" +
                  std::to_string(counter++) + ".tmp"))
                    .string();
        std::ofstream out(path_);
        out << contents;
    }

    ~TempFile() { std::filesystem::remove(path_); }

    const std::string& path() const { return path_; }

private:
    std::string path_;
};

}  // namespace

TEST_CASE("encode emits the worked temporal-rate raster byte-for-byte")
{
    const auto result = run("encode --scheme temporal-rate --n 8 --value 355");
    CHECK(result.exit_code == 0);
    // Thin adapter: identical to the library call.
    CHECK(trimmed(result.out) ==
          raster_to_json(temporal_rate_encode(355, TemporalRateParams{8, 3})));
    CHECK(trimmed(result.out) ==
          R"({"neuron_count":3,"slot_count":24,"spikes":[[3,4,5,6,7],[12,13,14,15],[21,22,23]]})");
}

TEST_CASE("encode digit artifacts")
{
    auto result = run("encode --scheme unary-positional --n 8 --value 355 --format text");
    CHECK(result.exit_code == 0);
    CHECK(trimmed(result.out) == "01111001 01111000 00000111_u8");

    result = run("encode --scheme positional --base 2 --value 355");
    CHECK(trimmed(result.out) == "101100011_2");

    result = run("encode --scheme unary --value 13");
    CHECK(trimmed(result.out) == "1111111111111_u");

    result = run("encode --scheme rate-unary --value 0 --slot-cap 8");
    CHECK(trimmed(result.out) == R"({"neuron_count":1,"slot_count":8,"spikes":[[]]})");

    // Values are also accepted in digits_base notation.
    result = run("encode --scheme temporal-rate --n 8 --value 101100011_2");
    CHECK(trimmed(result.out) ==
          raster_to_json(temporal_rate_encode(355, TemporalRateParams{8, 3})));
}

TEST_CASE("decode round trips through files and stdin")
{
    const TempFile tr355(raster_to_json(temporal_rate_encode(355, {8, 3})));
    auto result = run("decode --scheme temporal-rate " + tr355.path());
    CHECK(result.exit_code == 0);
    CHECK(trimmed(result.out) == "355");

    const TempFile t8_355(raster_to_json(temporal_positional_encode(355, 8, 3)));
    result = run("decode --scheme temporal --base 8 " + t8_355.path());
    CHECK(trimmed(result.out) == "73");

    const TempFile word("01111001 01111000 00000111_u8");
    result = run("decode --scheme unary-positional " + word.path());
    CHECK(trimmed(result.out) == "355");

    result = run_shell("echo '101100011_2' | " + std::string(SPIKENUM_CLI_PATH) +
                       " decode --scheme positional 2>/dev/null");
    CHECK(result.exit_code == 0);
    CHECK(trimmed(result.out) == "355");
}

TEST_CASE("decode rejects malformed input with exit 2")
{
    const TempFile junk("{not json");
    auto result = run("decode --scheme temporal-rate " + junk.path());
    CHECK(result.exit_code == 2);

    result = run("decode --scheme nonsense " + junk.path());
    CHECK(result.exit_code == 2);
}

TEST_CASE("missing input file exits 1")
{
    const auto result = run("decode --scheme temporal-rate /no/such/file.json");
    CHECK(result.exit_code == 1);
}

TEST_CASE("convert binary to unary-positional")
{
    const TempFile bits("101100011_2");
    auto result = run("convert --to unary-positional --n 8 " + bits.path());
    CHECK(result.exit_code == 0);
    CHECK(trimmed(result.out) == "01111001 01111000 00000111_u8");

    const TempFile word("01111001 01111000 00000111_u8");
    result = run("convert --to positional --base 10 " + word.path());
    CHECK(trimmed(result.out) == "355_10");

    result = run("convert --to unary " + bits.path());
    CHECK(trimmed(result.out).size() == 355 + 2);
}

TEST_CASE("inject perturbs one coordinate")
{
    const TempFile word("01111001 01111000 00000111_u8");
    auto result = run("inject --scheme unary-positional --event digit-flip "
                      "--stream 2 --bit 1 " +
                      word.path());
    CHECK(result.exit_code == 0);
    CHECK(trimmed(result.out) == "00111001 01111000 00000111_u8");

    result = run("inject --scheme unary-positional --event digit-flip "
                 "--stream 2 --bit 1 --with-impact " +
                 word.path());
    CHECK(result.out.find("\"impact\":\"-64\"") != std::string::npos);

    result = run("inject --scheme unary-positional --event digit-flip "
                 "--stream 9 --bit 0 " +
                 word.path());
    CHECK(result.exit_code == 2);
}

TEST_CASE("sweep reports are byte-identical across runs and job counts")
{
    const std::string args =
        "sweep --scheme unary-positional --n 8 --k 3 --values exhaustive "
        "--errors digit-flip --events exhaustive";
    const auto first = run("--seed 7 " + args);
    CHECK(first.exit_code == 0);
    CHECK(first.out.find("\"max_abs_impact\":\"64\"") != std::string::npos);

    const auto second = run("--seed 7 " + args);
    CHECK(second.out == first.out);

    const auto parallel = run("--seed 7 --jobs 4 " + args);
    CHECK(parallel.out == first.out);

    // Sampling without a seed is refused.
    const auto unseeded = run(
        "sweep --scheme unary-positional --n 8 --k 3 --values sample:10 "
        "--errors digit-flip --events sample");
    CHECK(unseeded.exit_code == 2);
}

TEST_CASE("bench table1")
{
    const auto result = run("bench table1 --bases 2,10 --digits 1..6");
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("2,4,16,13,13\n") != std::string::npos);
    CHECK(result.out.find("10,4,10000,9876,9876\n") != std::string::npos);
    CHECK(result.out.find("10,6,1000000") != std::string::npos);
}

TEST_CASE("bench tradeoff and measure")
{
    auto result = run(
        "bench tradeoff --values 355 --schemes rate-unary,temporal-2,temporal-rate-8");
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("rate-unary,2,1,355,355,1,true\n") != std::string::npos);
    CHECK(result.out.find("temporal,2,9,9,5,256,true\n") != std::string::npos);
    CHECK(result.out.find("temporal-rate,8,3,24,12,64,true\n") != std::string::npos);

    result = run("--format json bench measure --scheme temporal-rate --n 8 --k 3 "
                 "--value 355");
    CHECK(result.out.find("\"utilization\":\"1/6\"") != std::string::npos);
}

TEST_CASE("compare surfaces the base-8 ambiguity")
{
    const TempFile a(raster_to_json(temporal_positional_encode(137, 8, 3)));
    const TempFile b(raster_to_json(temporal_positional_encode(256, 8, 3)));
    auto result = run("compare --scheme temporal --base 8 " + a.path() + " " + b.path());
    CHECK(result.exit_code == 0);
    CHECK(trimmed(result.out) == "AMBIGUOUS");

    const TempFile c(raster_to_json(temporal_rate_encode(137, {8, 3})));
    const TempFile d(raster_to_json(temporal_rate_encode(256, {8, 3})));
    result = run("compare --scheme temporal-rate " + c.path() + " " + d.path());
    CHECK(trimmed(result.out) == "LESS");
}

TEST_CASE("output lands in the requested file")
{
    const std::string path =
        (std::filesystem::temp_directory_path() /
         ("spikenum_out_" + std::to_string(getpid()) + ".json"))
            .string();
    const auto result =
        run("--output " + path + " encode --scheme temporal-rate --n 8 --value 355");
    CHECK(result.exit_code == 0);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line);
    CHECK(line == raster_to_json(temporal_rate_encode(355, {8, 3})));
    std::filesystem::remove(path);
}
