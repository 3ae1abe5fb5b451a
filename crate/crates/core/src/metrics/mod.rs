//! Minimum product distances, center densities and the comparison tables.

mod distance;
mod power;
mod tables;

pub use distance::{
    center_density, closed_form_dpmin, comparative_distances, comparative_from,
    comparative_numeric, mixed_dn_published, norm_of_x_check, oracle_dpmin, oracle_work,
    ratio_asymptotics, status_at_least, Comparative, DistanceReport, DistanceStatus, Erratum,
    OracleResult, RatioReport, DEFAULT_ORACLE_RADIUS, DEFAULT_WORK_CAP,
};
pub use power::PowerProduct;
pub use tables::{
    agrees_with_published, published_cells, table, table_columns, table_params, CellFlag,
    ComparativeRow, RowParams, Table, TableCell, TableRow, RENDER_PLACES,
};
