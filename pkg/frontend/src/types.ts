import { z } from "zod";

export const figureInputSchema = z.object({
  path: z.string(),
  label: z.number().optional(),
});

export const figureSpecSchema = z.object({
  kind: z.enum(["heatmap", "line", "scaling", "husimi"]),
  inputs: z.array(figureInputSchema).min(1),
  output: z.string(),
  title: z.string().optional(),
  xLabel: z.string().optional(),
  yLabel: z.string().optional(),
  // column selection for the generic line/heatmap kinds
  xColumn: z.string().optional(),
  yColumn: z.string().optional(),
  valueColumn: z.string().optional(),
});

export const manifestSchema = z.object({
  outDir: z.string().default("figures"),
  figures: z.array(figureSpecSchema).min(1),
});

export type FigureInput = z.infer<typeof figureInputSchema>;
export type FigureSpec = z.infer<typeof figureSpecSchema>;
export type Manifest = z.infer<typeof manifestSchema>;

export interface RenderResult {
  svg: string;
  /** max relative deviation between numeric and overlay columns (scaling only) */
  overlayResidual?: number;
}
