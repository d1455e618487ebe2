#include "aocr/error.hpp"

namespace aocr {

std::string_view error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::Format: return "E_FORMAT";
        case ErrorCode::Empty: return "E_EMPTY";
        case ErrorCode::Degenerate: return "E_DEGENERATE";
        case ErrorCode::Dim: return "E_DIM";
        case ErrorCode::EmptyDataset: return "E_EMPTY_DATASET";
        case ErrorCode::Magic: return "E_MAGIC";
        case ErrorCode::Truncated: return "E_TRUNCATED";
        case ErrorCode::DimMismatch: return "E_DIM_MISMATCH";
        case ErrorCode::Header: return "E_HEADER";
        case ErrorCode::Label: return "E_LABEL";
        case ErrorCode::Split: return "E_SPLIT";
        case ErrorCode::MissingFile: return "E_MISSING_FILE";
        case ErrorCode::TemplateMissing: return "E_TEMPLATE_MISSING";
        case ErrorCode::Io: return "E_IO";
        case ErrorCode::EmptySplit: return "E_EMPTY_SPLIT";
    }
    return "E_UNKNOWN";
}

}  // namespace aocr
