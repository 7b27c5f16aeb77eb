pub mod labels;
pub mod reference;
pub mod conic;
pub mod pipeline;
pub mod theorems;
pub mod cache;
pub mod report;
pub mod svg;
