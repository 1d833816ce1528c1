// Writes the generated COLOR benchmark instances (queens and Mycielski
// families) and the hyperparameter presets into a data directory.

#include "picolor/config.hpp"
#include "picolor/graph.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    namespace fs = std::filesystem;
    using namespace picolor;
    const fs::path root = argc > 1 ? argv[1] : "data";
    fs::create_directories(root / "color");
    fs::create_directories(root / "presets");

    auto emit = [&](const std::string& name, const Graph& g, const std::string& comment) {
        std::ofstream(root / "color" / (name + ".col")) << write_dimacs(g, comment);
        std::cout << name << ": " << g.node_count() << " nodes, " << g.edge_count() << " edges\n";
    };
    for (int k = 3; k <= 7; ++k) {
        emit("myciel" + std::to_string(k), myciel_graph(k), "Mycielski graph, generated");
    }
    const std::pair<int, int> boards[] = {{5, 5}, {6, 6}, {7, 7}, {8, 8}, {8, 12}, {9, 9}, {11, 11}, {13, 13}};
    for (auto [r, c] : boards) {
        emit("queen" + std::to_string(r) + "-" + std::to_string(c), queen_graph(r, c), "queens graph, generated");
    }
    for (const auto& name : preset_names()) {
        std::ofstream(root / "presets" / (name + ".cfg")) << render_hyperparams(preset(name));
    }
    return 0;
}
