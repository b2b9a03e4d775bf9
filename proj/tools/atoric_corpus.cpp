// Writes a seeded corpus of scrambled disk bases, one file per base, plus an
// index listing each file with its expected classification.

#include <atoric/corpus.hpp>
#include <atoric/io.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Generate scrambled almost toric disk bases", "atoric-corpus"};
    std::uint64_t seed = 1;
    std::size_t count = 500;
    std::string dir;
    app.add_option("--seed", seed, "RNG seed");
    app.add_option("--count", count, "Number of bases");
    app.add_option("-o,--output", dir, "Output directory")->required();
    CLI11_PARSE(app, argc, argv);

    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::ofstream index(fs::path(dir) / "index.txt");
    const auto corpus = atoric::corpus::make_corpus(seed, count);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "base_%04zu.txt", i);
        std::ofstream(fs::path(dir) / name) << atoric::serialize(corpus[i].base);
        index << name << " " << corpus[i].generator << " blowups=" << corpus[i].blowups << " expect "
              << atoric::to_string(corpus[i].expected) << "\n";
    }
    std::cout << corpus.size() << " bases written to " << dir << "\n";
    return 0;
}
