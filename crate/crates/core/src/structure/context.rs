use std::sync::OnceLock;

use serde::Serialize;

use crate::arith::prime_power;
use crate::config::Guards;
use crate::error::Result;
use crate::perm::PermGroup;
use crate::table::{GroupTable, Subgroup};

use super::{lattice::SubgroupSet, series, ChermakDelgado, SpecialCheck};

/// A group together with its Cayley table and (lazily) its subgroup lattice.
#[derive(Debug)]
pub struct GroupContext {
    group: PermGroup,
    table: GroupTable,
    guards: Guards,
    lattice: OnceLock<SubgroupSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub order: u64,
    pub center_order: usize,
    pub derived_length: Option<u32>,
    pub nilpotency_class: Option<u32>,
    pub fitting_order: usize,
    pub frattini_order: usize,
    /// `|Ω1(Z(G))|`, only for `p`-groups.
    pub omega1_center_order: Option<usize>,
    pub min_generators: u32,
    pub rank: u32,
    pub solvable: bool,
    pub subgroup_count: usize,
}

impl GroupContext {
    pub fn new(group: PermGroup, guards: &Guards) -> Result<Self> {
        let table = GroupTable::new(&group, guards)?;
        Ok(GroupContext {
            group,
            table,
            guards: *guards,
            lattice: OnceLock::new(),
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    pub fn guards(&self) -> &Guards {
        &self.guards
    }

    pub fn whole(&self) -> Subgroup {
        self.table.whole()
    }

    pub fn lattice(&self) -> Result<&SubgroupSet> {
        if let Some(l) = self.lattice.get() {
            return Ok(l);
        }
        let l = SubgroupSet::enumerate(&self.table, &self.guards)?;
        Ok(self.lattice.get_or_init(|| l))
    }

    pub fn to_perm(&self, h: &Subgroup) -> PermGroup {
        self.table.to_perm_group(h)
    }

    pub fn center(&self) -> Subgroup {
        series::center(&self.table, &self.whole())
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        series::derived_subgroup(&self.table, &self.whole())
    }

    pub fn fitting(&self) -> Subgroup {
        super::fitting(&self.table, &self.whole())
    }

    pub fn frattini(&self) -> Result<Subgroup> {
        Ok(super::frattini(&self.table, self.lattice()?, &self.whole()))
    }

    pub fn sylow(&self, p: u64) -> Subgroup {
        super::sylow(&self.table, &self.whole(), p)
    }

    pub fn min_generators(&self) -> u32 {
        super::min_generators_of(&self.table, &self.whole())
    }

    pub fn rank(&self) -> Result<u32> {
        Ok(self.lattice()?.rank())
    }

    pub fn special_check(&self) -> Result<SpecialCheck> {
        super::special_check(&self.table, &self.whole())
    }

    pub fn chermak_delgado(&self) -> Result<ChermakDelgado> {
        Ok(super::chermak_delgado(&self.table, self.lattice()?))
    }

    pub fn report(&self) -> Result<StructureReport> {
        let t = &self.table;
        let g = self.whole();
        let z = self.center();
        let omega1_center_order =
            prime_power(g.order() as u64).map(|(p, _)| super::omega1(t, &z, p).order());
        let lattice = self.lattice()?;
        Ok(StructureReport {
            order: self.group.order(),
            center_order: z.order(),
            derived_length: series::derived_length(t, &g),
            nilpotency_class: series::nilpotency_class(t, &g),
            fitting_order: self.fitting().order(),
            frattini_order: self.frattini()?.order(),
            omega1_center_order,
            min_generators: lattice.whole().flags.min_generators,
            rank: lattice.rank(),
            solvable: series::is_solvable(t, &g),
            subgroup_count: lattice.len(),
        })
    }
}

fn ctx(g: &PermGroup, guards: &Guards) -> Result<GroupContext> {
    GroupContext::new(g.clone(), guards)
}

/// Every subgroup of `g`, sorted by order.
pub fn all_subgroups(g: &PermGroup, guards: &Guards) -> Result<Vec<PermGroup>> {
    let c = ctx(g, guards)?;
    Ok(c.lattice()?
        .iter()
        .map(|e| c.to_perm(&e.subgroup))
        .collect())
}

pub fn center(g: &PermGroup, guards: &Guards) -> Result<PermGroup> {
    let c = ctx(g, guards)?;
    Ok(c.to_perm(&c.center()))
}

pub fn derived_subgroup(g: &PermGroup, guards: &Guards) -> Result<PermGroup> {
    let c = ctx(g, guards)?;
    Ok(c.to_perm(&c.derived_subgroup()))
}

pub fn lower_central_series(g: &PermGroup, guards: &Guards) -> Result<Vec<PermGroup>> {
    let c = ctx(g, guards)?;
    Ok(series::lower_central_series(c.table(), &c.whole())
        .iter()
        .map(|h| c.to_perm(h))
        .collect())
}

pub fn derived_series(g: &PermGroup, guards: &Guards) -> Result<Vec<PermGroup>> {
    let c = ctx(g, guards)?;
    Ok(series::derived_series(c.table(), &c.whole())
        .iter()
        .map(|h| c.to_perm(h))
        .collect())
}

pub fn fitting_subgroup(g: &PermGroup, guards: &Guards) -> Result<PermGroup> {
    let c = ctx(g, guards)?;
    Ok(c.to_perm(&c.fitting()))
}

pub fn frattini_subgroup(g: &PermGroup, guards: &Guards) -> Result<PermGroup> {
    let c = ctx(g, guards)?;
    Ok(c.to_perm(&c.frattini()?))
}

pub fn sylow_subgroup(g: &PermGroup, p: u64, guards: &Guards) -> Result<PermGroup> {
    let c = ctx(g, guards)?;
    Ok(c.to_perm(&c.sylow(p)))
}

pub fn min_generators(g: &PermGroup, guards: &Guards) -> Result<u32> {
    Ok(ctx(g, guards)?.min_generators())
}

pub fn rank(g: &PermGroup, guards: &Guards) -> Result<u32> {
    ctx(g, guards)?.rank()
}

pub fn is_special_p_group(g: &PermGroup, guards: &Guards) -> Result<SpecialCheck> {
    ctx(g, guards)?.special_check()
}

pub fn chermak_delgado_subgroup(
    g: &PermGroup,
    guards: &Guards,
) -> Result<(PermGroup, ChermakDelgado)> {
    let c = ctx(g, guards)?;
    let cd = c.chermak_delgado()?;
    Ok((c.to_perm(&cd.subgroup), cd))
}

pub fn structure_report(g: &PermGroup, guards: &Guards) -> Result<StructureReport> {
    ctx(g, guards)?.report()
}
