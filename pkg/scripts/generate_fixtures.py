#!/usr/bin/env python3
"""Regenerate the bundled scene-tree fixtures.

Node hierarchies and descriptions are curated by hand; instance placements and
bounding spheres are procedural (seeded, so reruns are byte-stable). Output
goes to src/voxtour/assets/models/.
"""

from __future__ import annotations

import json
import math
import random
from pathlib import Path

OUT_DIR = Path(__file__).resolve().parent.parent / "src" / "voxtour" / "assets" / "models"

# Each entry: (name, label_override, instance_count, description, children)
# instance_count 0 marks an internal grouping node.


def n(name, count, desc, children=(), label=None):
    return {
        "name": name,
        "label": label or (name[0].upper() + name[1:]),
        "count": count,
        "desc": desc,
        "children": list(children),
    }


T4 = n(
    "T4", 1,
    "Bacteriophage that infects Escherichia coli, built from an icosahedral "
    "head, a contractile tail, and fibers for host recognition.",
    label="Bacteriophage T4",
    children=[
        n("head", 0,
          "Icosahedral shell that stores and guards the viral genome until "
          "injection into a host cell.",
          label="Capsid",
          children=[
              n("capsid protein", 930,
                "Major shell building block forming the hexagonal lattice of "
                "the head."),
              n("HOC", 155,
                "Highly antigenic outer protein decorating the shell surface; "
                "helps the virion stick to host surroundings."),
              n("SOC", 810,
                "Small outer protein that clamps neighboring shell subunits "
                "together and stabilizes the head."),
              n("portal protein", 12,
                "Ring at one vertex through which DNA is packaged and later "
                "ejected."),
              n("vertex protein", 55,
                "Pentameric subunit occupying the corners of the icosahedral "
                "shell."),
              n("internal protein I", 360,
                "Packaged protein injected with the genome to protect it from "
                "host nucleases."),
              n("internal protein II", 340,
                "Genome-associated protein that helps condense DNA inside the "
                "head."),
              n("internal protein III", 370,
                "Abundant internal protein released into the host during "
                "infection."),
              n("alt protein", 40,
                "Internal enzyme carried in the head that modifies host RNA "
                "polymerase on entry."),
              n("terminase", 4,
                "Motor enzyme that pumps genomic DNA into the empty shell "
                "during assembly."),
              n("prohead core protein", 60,
                "Scaffolding remnant from the assembly core of the immature "
                "head."),
          ]),
        n("neck", 0,
          "Short junction connecting the head to the tail and sealing the "
          "packaged genome.",
          children=[
              n("collar protein", 12,
                "Ring under the head that anchors the whiskers and caps the "
                "tail channel."),
              n("whisker protein", 6,
                "Fiber sensing ambient conditions and guiding long tail fiber "
                "retraction."),
              n("neck tube protein", 18,
                "Connector subunit continuing the DNA channel from head to "
                "tail."),
              n("fibritin", 6,
                "Collar fiber chaperoning long tail fiber assembly and "
                "attachment."),
          ]),
        n("Tail", 0,
          "Contractile machine that pierces the host envelope and conducts "
          "DNA from the head into the cell.",
          children=[
              n("tail sheath", 138,
                "Outer contractile cylinder that shortens like a spring to "
                "drive the tube through the host wall."),
              n("tail tube", 138,
                "Rigid inner channel through which the genome travels during "
                "injection."),
              n("tail terminator", 6,
                "Ring sealing the upper end of the tail until the head docks."),
              n("baseplate", 0,
                "Hub-and-wedge platform at the tail tip that senses the host "
                "and triggers contraction.",
                children=[
                    n("baseplate hub", 0,
                      "Central assembly of the baseplate surrounding the exit "
                      "channel.",
                      children=[
                          n("central spike", 3,
                            "Needle that punctures the outer host membrane on "
                            "contact."),
                          n("hub lysozyme", 3,
                            "Enzyme that digests the cell wall to clear a path "
                            "for the tail tube."),
                          n("hub subunit", 6,
                            "Structural core piece coupling the spike to the "
                            "tube channel."),
                      ]),
                    n("baseplate wedge", 0,
                      "Six outer blocks that flatten from dome to star when "
                      "infection begins.",
                      children=[
                          n("wedge subunit alpha", 12,
                            "Load-bearing wedge piece linking hub and fiber "
                            "sockets."),
                          n("wedge subunit beta", 12,
                            "Wedge piece transmitting the host-contact signal "
                            "toward the sheath."),
                          n("wedge subunit gamma", 18,
                            "Outer wedge piece completing the sixfold frame."),
                          n("baseplate pin", 6,
                            "Short leg under the wedge that touches the host "
                            "surface first."),
                      ]),
                    n("short tail fiber", 6,
                      "Stubby fiber that locks the baseplate irreversibly onto "
                      "the host."),
                    n("gp9 adaptor", 6,
                      "Socket protein hinging the long tail fibers to the "
                      "baseplate rim."),
                ]),
              n("long tail fiber", 0,
                "Jointed antenna that first recognizes receptor molecules on "
                "the host surface.",
                children=[
                    n("proximal fiber", 6,
                      "Upper half of the leg, attached at the baseplate "
                      "socket."),
                    n("distal fiber", 6,
                      "Lower half of the leg carrying the receptor-binding "
                      "region."),
                    n("fiber hinge", 6,
                      "Knee joint letting the leg fold against the sheath at "
                      "rest."),
                    n("fiber tip", 6,
                      "Very end of the leg that touches and reads the host "
                      "receptor."),
                ]),
          ]),
    ])


SARS = n(
    "SARS-CoV-2", 1,
    "Enveloped coronavirus whose spike-studded membrane encloses a ribonucleoprotein "
    "core with a single-stranded RNA genome.",
    label="SARS-CoV-2",
    children=[
        n("viral envelope", 0,
          "Lipid shell derived from host membranes, carrying the surface "
          "proteins.",
          children=[
              n("spike protein", 40,
                "Trimeric surface protein that binds the ACE2 receptor and "
                "fuses the membranes."),
              n("membrane protein", 1000,
                "Most abundant envelope protein, shaping the virion and "
                "organizing assembly."),
              n("envelope protein", 75,
                "Small ion-channel protein scattered sparsely through the "
                "membrane."),
              n("ORF3a protein", 60,
                "Accessory channel protein implicated in virion release and "
                "host response."),
              n("outer leaflet lipid", 120000, "Phospholipid facing the outside of the envelope."),
              n("inner leaflet lipid", 120000, "Phospholipid facing the interior of the envelope."),
          ]),
        n("viral lumen", 0,
          "Interior space of the virion holding the packaged genome and its "
          "protective proteins.",
          children=[
              n("nucleoprotein", 730,
                "RNA-binding protein coating the genome into a beads-on-a-string "
                "ribonucleoprotein."),
              n("RNA", 0,
                "Single positive-sense strand of roughly thirty thousand bases "
                "encoding the viral proteins.",
                label="Viral RNA",
                children=[
                    n("phosphate and sugar backbone", 29900,
                      "Alternating ribose and phosphate chain carrying the "
                      "bases."),
                    n("adenine nucleotide", 8950, "Adenine base along the genome strand."),
                    n("uracil nucleotide", 9590, "Uracil base along the genome strand."),
                    n("guanine nucleotide", 5860, "Guanine base along the genome strand."),
                    n("cytosine nucleotide", 5490, "Cytosine base along the genome strand."),
                ]),
          ]),
    ])


HIV = n(
    "HIV", 1,
    "Human immunodeficiency virion drifting in blood plasma, its cone-shaped "
    "core wrapped in matrix and a host-derived envelope.",
    label="HIV in blood plasma",
    children=[
        n("blood plasma", 0,
          "Crowded fluid surrounding the virion, packed with transport and "
          "immune proteins.",
          children=[
              n("serum albumin", 520, "Most common plasma protein; carries fatty acids and buffers pH."),
              n("immunoglobulin G", 110, "Main circulating antibody class recognizing pathogen surfaces."),
              n("immunoglobulin M", 16, "Pentameric first-response antibody with ten binding arms."),
              n("immunoglobulin A", 24, "Antibody guarding mucosal interfaces and secretions."),
              n("fibrinogen", 28, "Clotting precursor that polymerizes into fibrin threads on injury."),
              n("complement C3", 70, "Central complement component tagging surfaces for destruction."),
              n("complement C4", 30, "Complement component of the classical activation pathway."),
              n("transferrin", 40, "Iron shuttle delivering Fe ions to cells."),
              n("haptoglobin", 22, "Scavenger binding free hemoglobin released from red cells."),
              n("alpha-1-antitrypsin", 34, "Protease inhibitor shielding tissue from neutrophil enzymes."),
              n("alpha-2-macroglobulin", 14, "Broad trap protein engulfing rogue proteases."),
              n("apolipoprotein A", 45, "Structural protein of high-density lipoprotein particles."),
              n("prothrombin", 20, "Zymogen activated to thrombin during coagulation."),
              n("plasminogen", 18, "Precursor of plasmin, the clot-dissolving protease."),
              n("ceruloplasmin", 8, "Copper-carrying oxidase of the plasma."),
              n("transthyretin", 26, "Carrier for thyroid hormone and retinol-binding protein."),
              n("vitronectin", 12, "Adhesion protein linking complement control and clotting."),
              n("beta-2-microglobulin", 30, "Light chain shed from cell-surface HLA molecules."),
              n("C-reactive protein", 10, "Pentameric inflammation marker binding damaged membranes."),
          ]),
        n("viral envelope", 0,
          "Membrane stolen from the host cell during budding, sparsely studded "
          "with envelope spikes.",
          children=[
              n("envelope glycoprotein gp120", 42,
                "Receptor-binding head of the spike that grips CD4 on immune "
                "cells."),
              n("envelope glycoprotein gp41", 42,
                "Stalk of the spike that harpoons and fuses the target "
                "membrane."),
              n("host HLA class I", 16, "Host antigen-presenting protein captured during budding."),
              n("host ICAM-1", 12, "Host adhesion protein embedded in the stolen membrane."),
              n("outer leaflet lipid", 90000, "Phospholipid of the envelope's outer face."),
              n("inner leaflet lipid", 90000, "Phospholipid of the envelope's inner face."),
          ]),
        n("matrix shell", 0,
          "Protein layer lining the inside of the envelope and bridging it to "
          "the core.",
          children=[
              n("matrix protein", 2000,
                "Myristoylated lattice protein lining the envelope and "
                "directing assembly at the membrane."),
              n("Vif protein", 60, "Accessory factor neutralizing the host APOBEC defense."),
              n("Vpr protein", 200, "Accessory protein ferried into the cell to arrest its cycle."),
              n("Nef protein", 70, "Accessory protein that strips receptors from the host surface."),
              n("p6 protein", 140, "Late-domain peptide recruiting the host budding machinery."),
          ]),
        n("capsid core", 0,
          "Cone-shaped shell protecting the genome and the enzymes of early "
          "infection.",
          children=[
              n("capsid protein", 1500,
                "Hexamer-and-pentamer lattice subunit forming the fullerene "
                "cone."),
              n("nucleocapsid protein", 1200, "Zinc-finger protein coating the genomic RNA inside the cone."),
              n("reverse transcriptase", 50, "Enzyme copying viral RNA into DNA once inside the cell."),
              n("integrase", 100, "Enzyme splicing the viral DNA copy into the host genome."),
              n("protease", 100, "Maturation enzyme that cleaves the Gag polyprotein into parts."),
              n("Tat protein", 20, "Transactivator boosting transcription of the integrated genome."),
              n("Rev protein", 30, "Export factor shuttling unspliced viral RNA out of the nucleus."),
          ]),
    ])


def layout(spec, rng, center=(0.0, 0.0, 0.0), radius=100.0, prefix=""):
    """Assign ids, spheres, and instance placements; return flat node dicts."""
    node_id = (prefix + spec["name"]).lower().replace(" ", "-")
    kids = spec["children"]
    out = [{
        "id": node_id,
        "name": spec["name"],
        "label": spec["label"],
        "parent_id": None,
        "description": spec["desc"],
        "instance_count": spec["count"],
        "instances": _instances(spec["count"], center, radius, rng),
        "bounding_sphere": {"center": [round(v, 3) for v in center], "radius": round(radius, 3)},
    }]
    for i, kid in enumerate(kids):
        theta = 2.0 * math.pi * i / max(1, len(kids)) + rng.uniform(-0.2, 0.2)
        phi = rng.uniform(-0.5, 0.5)
        dist = radius * 0.52
        kc = (
            center[0] + dist * math.cos(theta) * math.cos(phi),
            center[1] + dist * math.sin(phi),
            center[2] + dist * math.sin(theta) * math.cos(phi),
        )
        kr = radius * (0.34 if kid["children"] else 0.22) * rng.uniform(0.85, 1.1)
        sub = layout(kid, rng, kc, kr, prefix)
        sub[0]["parent_id"] = node_id
        out.extend(sub)
    return out


def _instances(count, center, radius, rng):
    if count == 0:
        return []
    placements = []
    for _ in range(min(count, 6)):
        r = radius * 0.7 * rng.random() ** (1.0 / 3.0)
        u, v = rng.uniform(-1, 1), rng.uniform(0, 2 * math.pi)
        s = math.sqrt(1 - u * u)
        pos = [center[0] + r * s * math.cos(v), center[1] + r * u, center[2] + r * s * math.sin(v)]
        q = [rng.gauss(0, 1) for _ in range(4)]
        norm = math.sqrt(sum(c * c for c in q)) or 1.0
        placements.append({
            "position": [round(p, 3) for p in pos],
            "orientation": [c / norm for c in q],
        })
    return placements


def main():
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    for fname, model_name, spec, seed in [
        ("t4.json", "Bacteriophage T4", T4, 41),
        ("sars_cov_2.json", "SARS-CoV-2", SARS, 42),
        ("hiv.json", "HIV in blood plasma", HIV, 43),
    ]:
        rng = random.Random(seed)
        nodes = layout(spec, rng)
        doc = {"model_name": model_name, "nodes": nodes}
        path = OUT_DIR / fname
        path.write_text(json.dumps(doc, indent=1) + "\n", encoding="utf-8")
        leaves = sum(1 for nd in nodes if not any(o["parent_id"] == nd["id"] for o in nodes))
        print(f"{fname}: {len(nodes)} nodes, {leaves} leaves")


if __name__ == "__main__":
    main()
