//! Profile-table output: the CSV counterpart of
//! [`crate::schema::load_profiles`], with a header row naming the attributes.

use crate::schema::{AttributeSchema, NodeProfile};
use std::io::Write;

pub fn write_profiles<W: Write>(
    schema: &AttributeSchema,
    profiles: &[NodeProfile],
    w: W,
) -> csv::Result<()> {
    let mut writer = csv::Writer::from_writer(w);
    writer.write_record(schema.attributes().iter().map(|a| a.name()))?;
    for profile in profiles {
        writer.write_record(
            schema
                .attributes()
                .iter()
                .zip(profile.values())
                .map(|(attr, value)| attr.format_value(value)),
        )?;
    }
    writer.flush()?;
    Ok(())
}
