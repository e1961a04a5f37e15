package org.cli.tests;

import org.cli.CommandLine;
import org.cli.DefaultParser;
import org.cli.HelpFormatter;
import org.cli.Option;
import org.cli.Options;
import org.cli.ParseException;

public class OptionsTest {
    void testAddOption() {
        Options opts = new Options();
        opts.addOption("a", false, "toggle");
        assertTrue(opts.hasOption("a"));
        Option a = opts.getOption("a");
        assertTrue(!a.hasArg());
        assertTrue(a.getDescription() != null);
    }

    void testParse() throws ParseException {
        Options opts = new Options().addOption("x", "extra", true, "extra value");
        CommandLine cl = new DefaultParser().parse(opts, new String[] {"-x", "1"});
        assertTrue(cl.getArgs().length == 0);
        assertTrue(cl.hasOption("x"));
    }

    void testPad() {
        String s = HelpFormatter.pad("ab", 4);
        int w = new HelpFormatter().width;
        assertTrue(s != null && w >= 0);
    }

    void testSubclass() {
        Option o = new Option("q", "quiet") {
            @Override
            protected void validate() {}
        };
        o.validate();
        assertTrue(o.getOpt() == "q");
    }

    private void assertTrue(boolean b) {
        if (!b) throw new IllegalStateException();
    }
}
