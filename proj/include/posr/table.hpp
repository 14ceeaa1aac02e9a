#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "posr/ramsey.hpp"

namespace posr {

/// One published 2-uniform Boolean Ramsey value BR²(H_1, H_2).
struct TableCell {
    std::string id;  // "a:cup:2/cap:3"
    char panel = 'a';
    std::vector<std::string> targets;
    int expected = 0;
};

/// All cells, panels 'a'..'i'.
const std::vector<TableCell>& table_cells();
/// Cells whose panel letter occurs in `panels` ("" selects all).
std::vector<TableCell> select_cells(const std::string& panels);

struct CellResult {
    TableCell cell;
    /// Exact value when the scan settled it within the host cap.
    std::optional<int> value;
    /// Largest n shown avoidable.
    int avoidable_up_to = 0;
    /// Method of the deciding step, or "unresolved".
    std::string method;
    double seconds = 0;
    RamseyOutcome outcome;

    /// The value, ">N" when every scanned host was avoidable, or "?".
    std::string value_text() const;
};

/// Runs compute_ramsey on B_1..B_max_host for the cell.
CellResult run_cell(const TableCell& cell, int max_host, const RamseyOptions& options,
                    const std::function<void(const RamseyStep&)>& on_step = {});

/// "cell,value,method,seconds" header plus one row per result.
void write_csv(std::ostream& out, const std::vector<CellResult>& results);
nlohmann::ordered_json to_json(const CellResult& r);

} // namespace posr
